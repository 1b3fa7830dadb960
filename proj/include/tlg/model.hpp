#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tlg {

/// Element of P(U): bit i is set iff entity i (declaration order) is a member.
using Subset = std::uint64_t;

enum class DeterminerKind { Every, Some, Table };

struct Determiner {
  DeterminerKind kind = DeterminerKind::Every;
  std::set<std::pair<Subset, Subset>> table;  // (A, B) pairs for Table
};

/// Finite model: universe, unary and binary predicates named by words, and
/// determiner meanings.
class Model {
 public:
  static constexpr std::size_t kDefaultUniverseCap = 6;

  explicit Model(std::vector<std::string> universe, std::size_t cap = kDefaultUniverseCap);

  /// {"universe": [...], "unary": {w: [e]}, "binary": {w: [[x, y]]},
  ///  "determiners": {w: "every" | "some" | "a" | [[A, B]]}} with subsets as name lists.
  static Model from_json_text(std::string_view text, std::size_t cap = kDefaultUniverseCap);
  static Model from_file(const std::string& path, std::size_t cap = kDefaultUniverseCap);

  void set_unary(const std::string& word, Subset members);
  void set_binary(const std::string& word, std::set<std::pair<int, int>> pairs);
  void set_determiner(const std::string& word, Determiner d);

  std::size_t size() const { return universe_.size(); }
  const std::vector<std::string>& universe() const { return universe_; }
  Subset full() const { return size() == 64 ? ~Subset{0} : (Subset{1} << size()) - 1; }
  std::uint64_t subset_count() const { return Subset{1} << size(); }

  int entity(const std::string& name) const;
  Subset subset(const std::vector<std::string>& names) const;
  std::string format_subset(Subset s) const;

  const Subset* unary(const std::string& word) const;
  const std::set<std::pair<int, int>>* binary(const std::string& word) const;
  /// Declared determiner, else the builtin meaning of every / some / a.
  std::optional<Determiner> determiner(const std::string& word) const;

 private:
  std::vector<std::string> universe_;
  std::map<std::string, Subset> unary_;
  std::map<std::string, std::set<std::pair<int, int>>> binary_;
  std::map<std::string, Determiner> determiners_;
};

/// {x | exists b in B. (x, b) in v}.
Subset forward_image(const std::string& verb, Subset b, const Model& m);

/// every: {X | A subset of X}; some, a: {X | X meets A}; tables: {B | (A, B) listed}.
/// Sorted ascending.
std::vector<Subset> interp_determiner(const std::string& det, Subset a, const Model& m);

}  // namespace tlg
