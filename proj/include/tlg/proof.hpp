#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "tlg/formula.hpp"

namespace tlg {

enum class Rule {
  Axiom,
  UnderL,   // \L
  OverL,    // /L
  TensorL,  // .L
  UnderR,   // \R
  OverR,    // /R
  TensorR,  // .R
  BangL,    // !L
  BangR,    // !R
  NablaL,   // @L
  NablaR,   // @R
  Perm,
  Cut,  // never produced by search; exists so imported trees can be rejected
};

std::string rule_name(Rule r);
Rule parse_rule_name(const std::string& name);

/// Rule-specific positions, all relative to the conclusion antecedent.
///
/// \L : Gamma = [0, gamma), Sigma = [gamma, gamma + sigma), principal at gamma + sigma.
/// /L : Gamma = [0, gamma), principal at gamma, Sigma = [gamma + 1, gamma + 1 + sigma).
/// .R : Gamma = [0, gamma).
/// .L, @L, !L : `principal`; !L also records `copies`.
/// Perm : the @-formula at `from` in the conclusion sits at `to` in the premise.
struct RuleData {
  int gamma = -1;
  int sigma = -1;
  int principal = -1;
  int copies = 0;
  int from = -1;
  int to = -1;

  friend bool operator==(const RuleData&, const RuleData&) = default;
};

/// Immutable cut-free derivation. Subtrees are shared.
class ProofTree {
 public:
  ProofTree(Rule rule, Sequent conclusion, std::vector<ProofTree> premises = {}, RuleData data = {});

  Rule rule() const { return node_->rule; }
  const Sequent& conclusion() const { return node_->conclusion; }
  const std::vector<ProofTree>& premises() const { return node_->premises; }
  const RuleData& data() const { return node_->data; }

  std::size_t node_count() const;
  /// Multiset of rule labels, e.g. {"/L": 1, "\\L": 1, "Axiom": 3}.
  std::multiset<std::string> rule_multiset() const;

  friend bool operator==(const ProofTree& a, const ProofTree& b);

 private:
  struct Node {
    Rule rule;
    Sequent conclusion;
    std::vector<ProofTree> premises;
    RuleData data;
  };
  std::shared_ptr<const Node> node_;
};

enum class CheckFailure {
  None,
  BadAxiom,
  PremiseCount,
  BadSplit,
  ShapeMismatch,
  PremiseMismatch,
  CopyBound,
  BadPermutation,
  EmptyAntecedent,
  CutRule,
};

std::string to_string(CheckFailure f);

struct CheckResult {
  bool ok = true;
  CheckFailure failure = CheckFailure::None;
  std::string path;  // e.g. "root.1.0"
  Rule rule = Rule::Axiom;
  std::string message;

  explicit operator bool() const { return ok; }
};

/// Verifies every node is a correct instance of its rule schema, with
/// 1 <= copies <= k for !L. Reports the first offending node in pre-order.
CheckResult check_proof(const ProofTree& tree, int k = 2);

/// Indented rendering, one node per line: "<rule>[ (data)]: <sequent>".
std::string proof_to_text(const ProofTree& tree);

/// Removes Perm nodes and moves @-formulas of every sequent to the front in
/// sorted order. Only the copy count survives as rule data.
ProofTree perm_normalize(const ProofTree& tree);

/// Canonical string identity of a tree up to Perm placement.
std::string proof_key(const ProofTree& tree);

/// @-formulas first (sorted), other formulas in their original order.
Sequent canonical_sequent(const Sequent& s);

nlohmann::json proof_to_json(const ProofTree& tree);
ProofTree proof_from_json(const nlohmann::json& j, const std::set<std::string>& atoms = default_atoms());

}  // namespace tlg
