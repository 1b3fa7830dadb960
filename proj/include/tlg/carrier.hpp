#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tlg/model.hpp"
#include "tlg/wire.hpp"

namespace tlg {

/// Element indices, one per wire.
using Tuple = std::vector<std::uint64_t>;

struct TupleHash {
  std::size_t operator()(const Tuple& t) const {
    std::size_t h = t.size();
    for (auto x : t) h ^= std::hash<std::uint64_t>{}(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

/// Default bound on carrier sizes and intermediate table sizes.
inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

/// Enumerated carrier of a wire type: N is P(U) indexed by bitmask, S the
/// one-point set, Fock(X) the blocks X^1, ..., X^k laid out in order, and a
/// product uses mixed radix with the first part most significant.
class Carrier {
 public:
  Carrier(const WireType& w, std::size_t universe, int k, std::uint64_t budget = kDefaultBudget);

  const WireType& type() const { return type_; }
  std::uint64_t size() const { return size_; }
  int k() const { return k_; }
  std::size_t universe() const { return universe_; }

  /// Fock carriers: the element (items, items.size()).
  std::uint64_t fock_encode(const Tuple& items) const;
  Tuple fock_decode(std::uint64_t x) const;
  const Carrier& inner() const { return children_.front(); }

  /// Product carriers.
  std::uint64_t pack(const Tuple& parts) const;
  Tuple unpack(std::uint64_t x) const;
  const std::vector<Carrier>& parts() const { return children_; }

  /// Every element whose N-components all lie in `allowed`.
  std::vector<std::uint64_t> elements_over(const std::vector<Subset>& allowed) const;

  std::string format(std::uint64_t x, const Model& m) const;

 private:
  WireType type_;
  std::size_t universe_;
  int k_;
  std::uint64_t budget_;
  std::uint64_t size_ = 1;
  std::vector<Carrier> children_;
  std::vector<std::uint64_t> offsets_;  // Fock: start of block i+1
};

Carrier interp_object(const WireType& w, const Model& m, int k, std::uint64_t budget = kDefaultBudget);

}  // namespace tlg
