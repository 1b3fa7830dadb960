#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace tlg {

/// Connective of a Lambek / SLLM formula.
///
/// `Under` is A\B (argument on the left), `Over` is B/A (argument on the
/// right), `Tensor` is A.B, `Bang` is !A and `Nabla` is @A.
enum class Connective { Atom, Under, Over, Tensor, Bang, Nabla };

/// Immutable formula AST with structural equality.
///
/// Nodes are shared; copying a Formula is cheap. For binary connectives
/// `left()` and `right()` are the operands in written order, so for
/// `Over` the result type is `left()` and the argument is `right()`.
class Formula {
 public:
  static Formula atom(std::string name);
  static Formula under(Formula arg, Formula result);  // arg\result
  static Formula over(Formula result, Formula arg);   // result/arg
  static Formula tensor(Formula left, Formula right);
  static Formula bang(Formula inner);
  static Formula nabla(Formula inner);

  Connective connective() const { return node_->conn; }
  bool is_atom() const { return node_->conn == Connective::Atom; }
  bool is_nabla() const { return node_->conn == Connective::Nabla; }
  bool is_bang() const { return node_->conn == Connective::Bang; }

  const std::string& name() const;
  const Formula& left() const;
  const Formula& right() const;
  const Formula& inner() const;

  /// For \ and / : the argument (A in A\B and B/A).
  const Formula& argument() const;
  /// For \ and / : the result (B in A\B and B/A).
  const Formula& result() const;

  std::size_t hash() const { return node_->hash; }
  std::size_t size() const { return node_->size; }

  friend bool operator==(const Formula& a, const Formula& b);
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);

 private:
  struct Node {
    Connective conn;
    std::string name;
    std::shared_ptr<const Formula> a, b;
    std::size_t hash = 0;
    std::size_t size = 1;
  };
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula make(Connective c, std::string name, const Formula* a, const Formula* b);

  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

inline const std::set<std::string>& default_atoms() {
  static const std::set<std::string> atoms{"n", "np", "s"};
  return atoms;
}

/// Parses the ASCII formula syntax: atoms, `\` and `/` (left-associative,
/// equal precedence), `.` for the tensor (loosest), prefix `!` and `@`
/// (tightest) and parentheses. Throws SyntaxError / UnknownAtomError.
Formula parse_formula(std::string_view text, const std::set<std::string>& atoms = default_atoms());

/// Inverse of parse_formula with the minimal number of parentheses.
std::string format_formula(const Formula& f);

/// Strips leading ! and @ wrappers.
const Formula& strip_modalities(const Formula& f);

/// Gamma -> C. The antecedent is ordered and must be non-empty.
struct Sequent {
  std::vector<Formula> antecedent;
  Formula succedent;

  friend bool operator==(const Sequent&, const Sequent&) = default;
  friend std::strong_ordering operator<=>(const Sequent& a, const Sequent& b);
};

struct SequentHash {
  std::size_t operator()(const Sequent& s) const;
};

/// "A, B -> C"
std::string format_sequent(const Sequent& s);
Sequent parse_sequent(std::string_view text, const std::set<std::string>& atoms = default_atoms());

}  // namespace tlg
