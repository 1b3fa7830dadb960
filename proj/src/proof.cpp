#include "tlg/proof.hpp"

#include <algorithm>
#include <sstream>

#include "tlg/error.hpp"

namespace tlg {

namespace {

const std::vector<std::pair<Rule, const char*>>& rule_names() {
  static const std::vector<std::pair<Rule, const char*>> names{
      {Rule::Axiom, "Axiom"}, {Rule::UnderL, "\\L"}, {Rule::OverL, "/L"},   {Rule::TensorL, ".L"},
      {Rule::UnderR, "\\R"},  {Rule::OverR, "/R"},   {Rule::TensorR, ".R"}, {Rule::BangL, "!L"},
      {Rule::BangR, "!R"},    {Rule::NablaL, "@L"},  {Rule::NablaR, "@R"},  {Rule::Perm, "Perm"},
      {Rule::Cut, "Cut"}};
  return names;
}

using Formulas = std::vector<Formula>;

Formulas slice(const Formulas& v, std::size_t begin, std::size_t end) {
  return Formulas(v.begin() + static_cast<std::ptrdiff_t>(begin), v.begin() + static_cast<std::ptrdiff_t>(end));
}

Formulas concat(std::initializer_list<Formulas> parts) {
  Formulas out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

class Checker {
 public:
  explicit Checker(int k) : k_(k) {}

  CheckResult run(const ProofTree& t, const std::string& path) {
    CheckResult r = local(t);
    if (!r.ok) {
      r.path = path;
      r.rule = t.rule();
      return r;
    }
    for (std::size_t i = 0; i < t.premises().size(); ++i) {
      CheckResult sub = run(t.premises()[i], path + "." + std::to_string(i));
      if (!sub.ok) return sub;
    }
    return {};
  }

 private:
  static CheckResult fail(CheckFailure f, std::string msg) {
    CheckResult r;
    r.ok = false;
    r.failure = f;
    r.message = std::move(msg);
    return r;
  }

  static bool premise_is(const ProofTree& t, std::size_t i, const Formulas& ante, const Formula& succ) {
    const Sequent& p = t.premises()[i].conclusion();
    return p.antecedent == ante && p.succedent == succ;
  }

  CheckResult local(const ProofTree& t) const {
    const Sequent& c = t.conclusion();
    const Formulas& ante = c.antecedent;
    const RuleData& d = t.data();
    const int n = static_cast<int>(ante.size());
    auto need_premises = [&](std::size_t count) -> CheckResult {
      if (t.premises().size() != count)
        return fail(CheckFailure::PremiseCount, "expected " + std::to_string(count) + " premise(s), found " +
                                                    std::to_string(t.premises().size()));
      return {};
    };
    auto mismatch = [&](const std::string& which) {
      return fail(CheckFailure::PremiseMismatch, which + " premise does not match the rule schema");
    };
    if (ante.empty()) return fail(CheckFailure::EmptyAntecedent, "empty antecedent");

    switch (t.rule()) {
      case Rule::Cut:
        return fail(CheckFailure::CutRule, "cut is not a rule of the cut-free calculus");

      case Rule::Axiom:
        if (auto r = need_premises(0); !r.ok) return r;
        if (n != 1 || !(ante[0] == c.succedent))
          return fail(CheckFailure::BadAxiom, "axiom must have the shape A -> A");
        return {};

      case Rule::UnderL:
      case Rule::OverL: {
        if (auto r = need_premises(2); !r.ok) return r;
        const bool under = t.rule() == Rule::UnderL;
        if (d.gamma < 0 || d.sigma < 1 || d.gamma + d.sigma + 1 > n)
          return fail(CheckFailure::BadSplit, "split positions out of range or empty Sigma");
        const int p = under ? d.gamma + d.sigma : d.gamma;
        const int sigma_begin = under ? d.gamma : d.gamma + 1;
        const Formula& principal = ante[static_cast<std::size_t>(p)];
        const Connective want = under ? Connective::Under : Connective::Over;
        if (principal.connective() != want)
          return fail(CheckFailure::BadSplit, "formula at the split is not of the form " +
                                                  std::string(under ? "A\\B" : "B/A"));
        Formulas sigma = slice(ante, static_cast<std::size_t>(sigma_begin),
                               static_cast<std::size_t>(sigma_begin + d.sigma));
        Formulas gamma = slice(ante, 0, static_cast<std::size_t>(d.gamma));
        Formulas delta = slice(ante, static_cast<std::size_t>(sigma_begin + d.sigma + (under ? 1 : 0)), ante.size());
        if (!premise_is(t, 0, sigma, principal.argument())) return mismatch("first");
        if (!premise_is(t, 1, concat({gamma, {principal.result()}, delta}), c.succedent)) return mismatch("second");
        return {};
      }

      case Rule::TensorL: {
        if (auto r = need_premises(1); !r.ok) return r;
        if (d.principal < 0 || d.principal >= n) return fail(CheckFailure::BadSplit, "principal out of range");
        const Formula& f = ante[static_cast<std::size_t>(d.principal)];
        if (f.connective() != Connective::Tensor) return fail(CheckFailure::ShapeMismatch, "principal is not A.B");
        Formulas expect = concat({slice(ante, 0, static_cast<std::size_t>(d.principal)), {f.left(), f.right()},
                                  slice(ante, static_cast<std::size_t>(d.principal) + 1, ante.size())});
        if (!premise_is(t, 0, expect, c.succedent)) return mismatch("the");
        return {};
      }

      case Rule::UnderR:
      case Rule::OverR: {
        if (auto r = need_premises(1); !r.ok) return r;
        const bool under = t.rule() == Rule::UnderR;
        if (c.succedent.connective() != (under ? Connective::Under : Connective::Over))
          return fail(CheckFailure::ShapeMismatch, "succedent has the wrong connective");
        const Formula& arg = c.succedent.argument();
        Formulas expect = under ? concat({{arg}, ante}) : concat({ante, {arg}});
        if (!premise_is(t, 0, expect, c.succedent.result())) return mismatch("the");
        return {};
      }

      case Rule::TensorR: {
        if (auto r = need_premises(2); !r.ok) return r;
        if (c.succedent.connective() != Connective::Tensor)
          return fail(CheckFailure::ShapeMismatch, "succedent is not A.B");
        if (d.gamma < 1 || d.gamma >= n) return fail(CheckFailure::BadSplit, "both sides of the split must be non-empty");
        const auto g = static_cast<std::size_t>(d.gamma);
        if (!premise_is(t, 0, slice(ante, 0, g), c.succedent.left())) return mismatch("first");
        if (!premise_is(t, 1, slice(ante, g, ante.size()), c.succedent.right())) return mismatch("second");
        return {};
      }

      case Rule::BangL: {
        if (auto r = need_premises(1); !r.ok) return r;
        if (d.principal < 0 || d.principal >= n) return fail(CheckFailure::BadSplit, "principal out of range");
        const Formula& f = ante[static_cast<std::size_t>(d.principal)];
        if (!f.is_bang()) return fail(CheckFailure::ShapeMismatch, "principal is not !A");
        if (d.copies < 1 || d.copies > k_)
          return fail(CheckFailure::CopyBound, "!L copies " + std::to_string(d.copies) + " outside 1.." +
                                                   std::to_string(k_));
        Formulas copies(static_cast<std::size_t>(d.copies), f.inner());
        Formulas expect = concat({slice(ante, 0, static_cast<std::size_t>(d.principal)), copies,
                                  slice(ante, static_cast<std::size_t>(d.principal) + 1, ante.size())});
        if (!premise_is(t, 0, expect, c.succedent)) return mismatch("the");
        return {};
      }

      case Rule::BangR:
      case Rule::NablaR: {
        if (auto r = need_premises(1); !r.ok) return r;
        const bool bang = t.rule() == Rule::BangR;
        auto modal = [bang](const Formula& f) { return bang ? f.is_bang() : f.is_nabla(); };
        if (n != 1 || !modal(ante[0]) || !modal(c.succedent))
          return fail(CheckFailure::ShapeMismatch, "right modal rule needs a single modal formula on each side");
        if (!premise_is(t, 0, {ante[0].inner()}, c.succedent.inner())) return mismatch("the");
        return {};
      }

      case Rule::NablaL: {
        if (auto r = need_premises(1); !r.ok) return r;
        if (d.principal < 0 || d.principal >= n) return fail(CheckFailure::BadSplit, "principal out of range");
        const Formula& f = ante[static_cast<std::size_t>(d.principal)];
        if (!f.is_nabla()) return fail(CheckFailure::ShapeMismatch, "principal is not @A");
        Formulas expect = ante;
        expect[static_cast<std::size_t>(d.principal)] = f.inner();
        if (!premise_is(t, 0, expect, c.succedent)) return mismatch("the");
        return {};
      }

      case Rule::Perm: {
        if (auto r = need_premises(1); !r.ok) return r;
        if (d.from < 0 || d.from >= n || d.to < 0 || d.to >= n || d.from == d.to)
          return fail(CheckFailure::BadPermutation, "permutation positions out of range");
        const Formula& moved = ante[static_cast<std::size_t>(d.from)];
        if (!moved.is_nabla()) return fail(CheckFailure::BadPermutation, "only @-formulas may be permuted");
        Formulas expect = ante;
        expect.erase(expect.begin() + d.from);
        expect.insert(expect.begin() + d.to, moved);
        if (!premise_is(t, 0, expect, c.succedent)) return mismatch("the");
        return {};
      }
    }
    return fail(CheckFailure::ShapeMismatch, "unknown rule");
  }

  int k_;
};

std::string data_suffix(const ProofTree& t) {
  const RuleData& d = t.data();
  switch (t.rule()) {
    case Rule::BangL:
      return " (n=" + std::to_string(d.copies) + ")";
    case Rule::Perm:
      return " (" + std::to_string(d.from) + "->" + std::to_string(d.to) + ")";
    default:
      return "";
  }
}

void render(const ProofTree& t, int depth, std::ostringstream& out) {
  out << std::string(static_cast<std::size_t>(depth) * 2, ' ') << rule_name(t.rule()) << data_suffix(t) << ": "
      << format_sequent(t.conclusion()) << '\n';
  for (const auto& p : t.premises()) render(p, depth + 1, out);
}

void key_into(const ProofTree& t, std::string& out) {
  out += rule_name(t.rule());
  if (t.rule() == Rule::BangL) out += std::to_string(t.data().copies);
  out += '[';
  out += format_sequent(t.conclusion());
  out += ']';
  if (!t.premises().empty()) {
    out += '(';
    for (const auto& p : t.premises()) {
      key_into(p, out);
      out += ';';
    }
    out += ')';
  }
}

}  // namespace

std::string rule_name(Rule r) {
  for (const auto& [rule, name] : rule_names())
    if (rule == r) return name;
  return "?";
}

Rule parse_rule_name(const std::string& name) {
  for (const auto& [rule, n] : rule_names())
    if (name == n) return rule;
  throw Error("unknown rule name '" + name + "'");
}

ProofTree::ProofTree(Rule rule, Sequent conclusion, std::vector<ProofTree> premises, RuleData data)
    : node_(std::make_shared<const Node>(Node{rule, std::move(conclusion), std::move(premises), data})) {}

std::size_t ProofTree::node_count() const {
  std::size_t n = 1;
  for (const auto& p : premises()) n += p.node_count();
  return n;
}

std::multiset<std::string> ProofTree::rule_multiset() const {
  std::multiset<std::string> out{rule_name(rule())};
  for (const auto& p : premises()) out.merge(p.rule_multiset());
  return out;
}

bool operator==(const ProofTree& a, const ProofTree& b) {
  if (a.node_ == b.node_) return true;
  return a.rule() == b.rule() && a.data() == b.data() && a.conclusion() == b.conclusion() &&
         a.premises() == b.premises();
}

std::string to_string(CheckFailure f) {
  switch (f) {
    case CheckFailure::None:
      return "none";
    case CheckFailure::BadAxiom:
      return "bad-axiom";
    case CheckFailure::PremiseCount:
      return "premise-count";
    case CheckFailure::BadSplit:
      return "bad-split";
    case CheckFailure::ShapeMismatch:
      return "shape-mismatch";
    case CheckFailure::PremiseMismatch:
      return "premise-mismatch";
    case CheckFailure::CopyBound:
      return "copy-bound";
    case CheckFailure::BadPermutation:
      return "bad-permutation";
    case CheckFailure::EmptyAntecedent:
      return "empty-antecedent";
    case CheckFailure::CutRule:
      return "cut-rule";
  }
  return "unknown";
}

CheckResult check_proof(const ProofTree& tree, int k) { return Checker(k).run(tree, "root"); }

std::string proof_to_text(const ProofTree& tree) {
  std::ostringstream out;
  render(tree, 0, out);
  return out.str();
}

Sequent canonical_sequent(const Sequent& s) {
  Sequent out{{}, s.succedent};
  Formulas rest;
  for (const auto& f : s.antecedent) (f.is_nabla() ? out.antecedent : rest).push_back(f);
  std::stable_sort(out.antecedent.begin(), out.antecedent.end());
  out.antecedent.insert(out.antecedent.end(), rest.begin(), rest.end());
  return out;
}

ProofTree perm_normalize(const ProofTree& tree) {
  if (tree.rule() == Rule::Perm) return perm_normalize(tree.premises().front());
  std::vector<ProofTree> premises;
  premises.reserve(tree.premises().size());
  for (const auto& p : tree.premises()) premises.push_back(perm_normalize(p));
  RuleData data;
  data.copies = tree.data().copies;
  return ProofTree(tree.rule(), canonical_sequent(tree.conclusion()), std::move(premises), data);
}

std::string proof_key(const ProofTree& tree) {
  std::string out;
  key_into(perm_normalize(tree), out);
  return out;
}

nlohmann::json proof_to_json(const ProofTree& tree) {
  nlohmann::json j;
  j["rule"] = rule_name(tree.rule());
  j["sequent"] = format_sequent(tree.conclusion());
  j["premises"] = nlohmann::json::array();
  for (const auto& p : tree.premises()) j["premises"].push_back(proof_to_json(p));
  const RuleData& d = tree.data();
  nlohmann::json data = nlohmann::json::object();
  if (d.gamma >= 0) data["gamma"] = d.gamma;
  if (d.sigma >= 0) data["sigma"] = d.sigma;
  if (d.principal >= 0) data["principal"] = d.principal;
  if (d.copies > 0) data["copies"] = d.copies;
  if (d.from >= 0) data["from"] = d.from;
  if (d.to >= 0) data["to"] = d.to;
  j["data"] = data;
  return j;
}

ProofTree proof_from_json(const nlohmann::json& j, const std::set<std::string>& atoms) {
  try {
    Rule rule = parse_rule_name(j.at("rule").get<std::string>());
    Sequent seq = parse_sequent(j.at("sequent").get<std::string>(), atoms);
    std::vector<ProofTree> premises;
    for (const auto& p : j.at("premises")) premises.push_back(proof_from_json(p, atoms));
    RuleData d;
    if (j.contains("data")) {
      const auto& data = j.at("data");
      d.gamma = data.value("gamma", -1);
      d.sigma = data.value("sigma", -1);
      d.principal = data.value("principal", -1);
      d.copies = data.value("copies", 0);
      d.from = data.value("from", -1);
      d.to = data.value("to", -1);
    }
    return ProofTree(rule, std::move(seq), std::move(premises), d);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed proof JSON: ") + e.what());
  }
}

}  // namespace tlg
