#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "tlg/carrier.hpp"
#include "tlg/diagram.hpp"
#include "tlg/model.hpp"

namespace tlg {

using Rational = boost::multiprecision::cpp_rational;

/// Finite relation between the carriers of two wire lists; each side of a
/// pair holds one element index per wire.
class FinRel {
 public:
  FinRel(std::vector<WireType> source, std::vector<WireType> target)
      : source_(std::move(source)), target_(std::move(target)) {}

  const std::vector<WireType>& source() const { return source_; }
  const std::vector<WireType>& target() const { return target_; }

  void insert(Tuple src, Tuple dst);
  bool contains(const Tuple& src, const Tuple& dst) const { return pairs_.count({src, dst}) > 0; }
  const std::set<std::pair<Tuple, Tuple>>& pairs() const { return pairs_; }
  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }

  /// Relational composition: first this, then `next`.
  FinRel then(const FinRel& next) const;
  FinRel tensor(const FinRel& other) const;
  FinRel converse() const;

  static FinRel identity(const std::vector<WireType>& wires, std::size_t universe, int k);

  friend bool operator==(const FinRel&, const FinRel&) = default;

 private:
  std::vector<WireType> source_, target_;
  std::set<std::pair<Tuple, Tuple>> pairs_;
};

/// Sparse linear map between the free vector spaces on two carriers, with
/// exact rational coefficients. Zero entries are never stored.
class SparseTensor {
 public:
  SparseTensor(std::vector<WireType> inputs, std::vector<WireType> outputs)
      : inputs_(std::move(inputs)), outputs_(std::move(outputs)) {}

  const std::vector<WireType>& inputs() const { return inputs_; }
  const std::vector<WireType>& outputs() const { return outputs_; }

  void add(const Tuple& in, const Tuple& out, const Rational& v);
  Rational at(const Tuple& in, const Tuple& out) const;
  const std::map<std::pair<Tuple, Tuple>, Rational>& entries() const { return entries_; }
  std::size_t nonzeros() const { return entries_.size(); }

  /// Matrix product: first this, then `next`.
  SparseTensor then(const SparseTensor& next) const;
  SparseTensor tensor(const SparseTensor& other) const;

  FinRel support() const;
  static SparseTensor indicator(const FinRel& r);

  friend bool operator==(const SparseTensor&, const SparseTensor&) = default;

 private:
  std::vector<WireType> inputs_, outputs_;
  std::map<std::pair<Tuple, Tuple>, Rational> entries_;
};

// Relational semantics.

/// Meaning of a word occurrence as a state on the strings of `f`, chosen by
/// the shape of `f`: nouns and noun phrases {⟦w⟧}, intransitive verbs
/// {(⟦w⟧, *)}, transitive verbs {(⟦w⟧(B), *, B)}, determiners
/// {(X, A) | X in ⟦w⟧(A)}, subject relative pronouns {(A, A∩C, C, *)},
/// pronouns {(A, A)}; @ is transparent and ! lifts into the Fock object.
FinRel interp_word_rel(const std::string& word, const Formula& f, const Model& m, int k = 2,
                       std::uint64_t budget = kDefaultBudget);

FinRel generator_rel(const Generator& g, const Model& m, int k, std::uint64_t budget = kDefaultBudget);

/// F(R): ((x1..xi, i), (y1..yi, i)) whenever every (xj, yj) is in R. A
/// relation without source wires lifts to a state on the Fock object.
FinRel fock_lift(const FinRel& r, std::size_t universe, int k, std::uint64_t budget = kDefaultBudget);

/// pi_n on F(bundle(inner)).
FinRel projection(const std::vector<WireType>& inner, int n, std::size_t universe, int k,
                  std::uint64_t budget = kDefaultBudget);

FinRel eval_diagram_rel(const Diagram& d, const Model& m, int k, std::uint64_t budget = kDefaultBudget);

/// Non-emptiness of a closed sentence diagram.
bool sentence_truth(const Diagram& d, const Model& m, int k, std::uint64_t budget = kDefaultBudget);

// Vector semantics.

SparseTensor interp_word_vec(const std::string& word, const Formula& f, const Model& m, int k = 2,
                             std::uint64_t budget = kDefaultBudget);
SparseTensor generator_vec(const Generator& g, const Model& m, int k, std::uint64_t budget = kDefaultBudget);
SparseTensor eval_diagram_vec(const Diagram& d, const Model& m, int k, std::uint64_t budget = kDefaultBudget);

/// Scalar of a closed sentence diagram (sum over its unit outputs).
Rational sentence_scalar(const Diagram& d, const Model& m, int k, std::uint64_t budget = kDefaultBudget);

/// (scalar != 0) iff (relational truth).
bool check_equivalence(const Diagram& d, const Model& m, int k, std::uint64_t budget = kDefaultBudget);

std::string format_rational(const Rational& r);
double to_double(const Rational& r);

}  // namespace tlg
