#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "tlg/lexicon.hpp"
#include "tlg/proof.hpp"
#include "tlg/wire.hpp"

namespace tlg {

class Diagram;

enum class GenKind { State, DetBox, Cup, Cap, Swap, Id, Mult, Unit, Comult, Counit, FockLift, Proj };

std::string to_string(GenKind k);
GenKind parse_gen_kind(const std::string& name);

/// A box with typed input and output ports.
struct Generator {
  GenKind kind = GenKind::Id;
  std::vector<WireType> inputs;
  std::vector<WireType> outputs;
  // State / DetBox: the word occurrence and its formula.
  std::string word;
  int position = -1;
  std::string formula;
  // Proj: number of copies selected.
  int copies = 0;
  // FockLift: the lifted diagram.
  std::shared_ptr<const Diagram> body;

  static Generator state(std::string word, int position, const Formula& f);
  /// Determiner box: one N input, outputs the strings of the determiner's result.
  static Generator det_box(std::string word, int position, const Formula& f);
  static Generator cup(const WireType& t);
  static Generator cap(const WireType& t);
  static Generator swap(const WireType& a, const WireType& b);
  static Generator id(const WireType& t);
  static Generator mult();
  static Generator unit(const WireType& t = WireType::n());
  static Generator comult();
  static Generator counit(const WireType& t = WireType::n());
  static Generator fock_lift(std::shared_ptr<const Diagram> body);
  /// Proj(n) : F(bundle(inner)) -> inner repeated n times.
  static Generator proj(int n, const std::vector<WireType>& inner);

  bool is_lexical() const;
  /// "State", "Cup", "Proj(2)", ...
  std::string label() const;
};

/// Port of a node; node == kBoundary refers to the diagram's input boundary
/// (as an edge source) or output boundary (as an edge target).
struct Port {
  static constexpr int kBoundary = -1;
  int node = kBoundary;
  int index = 0;

  friend bool operator==(const Port&, const Port&) = default;
  friend auto operator<=>(const Port&, const Port&) = default;
};

struct Edge {
  Port src;
  Port dst;
  WireType type;
};

/// Directed acyclic string diagram. Every node input and output boundary
/// slot has exactly one incoming edge; output ports feed at most one edge
/// and only S-typed outputs may be left open.
class Diagram {
 public:
  std::vector<WireType> inputs;
  std::vector<WireType> outputs;
  std::vector<Generator> nodes;
  std::vector<Edge> edges;

  int add(Generator g);
  void connect(Port src, Port dst);

  const WireType& source_type(Port p) const;
  const WireType& target_type(Port p) const;
};

struct TypeCheck {
  bool ok = true;
  std::string message;
  int edge = -1;  // first offending edge, if the problem is an edge

  explicit operator bool() const { return ok; }
};

TypeCheck typecheck(const Diagram& d);

/// Reads a proof as a diagram: each word becomes a State (wrapped in a
/// FockLift when its type is banged), \L and /L become cups, \R and /R caps,
/// !L a projector, !R a FockLift of the premise diagram, Perm a run of swaps
/// of the moved strings; @ rules are identities. `words` names the leaves of
/// the root antecedent in order.
Diagram proof_to_diagram(const ProofTree& proof, const std::vector<std::string>& words, const Lexicon& lex);

/// Replaces the boxes of tagged words by their internal wiring: relative
/// pronouns by caps into a multiplication, pronouns by a cap, determiners by
/// a DetBox fed through a cap. Recurses into FockLift bodies.
Diagram substitute_wirings(const Diagram& d, const Lexicon& lex);

/// Rewrites to a fixpoint: inlines Proj(1) of a lifted state, yanks cap/cup
/// pairs, removes identities and structure on the unit object S, and cancels
/// swap pairs and swaps absorbed by a cup or produced by a cap.
Diagram simplify(const Diagram& d);

/// Cancels adjacent swap pairs only.
Diagram normalize_swaps(const Diagram& d);

/// Replaces every swap by the crossing it denotes (wires reconnected directly).
Diagram dissolve_swaps(const Diagram& d);

/// Renumbers nodes in a canonical traversal order and sorts edges.
Diagram canonicalize(const Diagram& d);

/// Structural equality of canonical forms.
bool same_diagram(const Diagram& a, const Diagram& b);
/// Equality after dissolving swaps.
bool same_up_to_swaps(const Diagram& a, const Diagram& b);

/// Labels of all generators (nested FockLift bodies excluded).
std::multiset<std::string> generator_multiset(const Diagram& d, bool include_lexical = true);

/// Topological layers (longest path from the sources), for display.
std::vector<std::vector<int>> layers(const Diagram& d);

nlohmann::json diagram_to_json(const Diagram& d);
Diagram diagram_from_json(const nlohmann::json& j);
std::string diagram_to_dot(const Diagram& d);
/// Layer-by-layer text listing.
std::string diagram_to_text(const Diagram& d);

}  // namespace tlg
