#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "tlg/formula.hpp"

namespace tlg {

/// Type of a string in a diagram. N is the noun object P(U), S the monoidal
/// unit; Fock(X) is the bounded Fock object over X and Product a bundle of
/// several strings carried by one Fock wire.
class WireType {
 public:
  enum class Kind { N, S, Fock, Product };

  static WireType n() { return WireType(Kind::N, {}); }
  static WireType s() { return WireType(Kind::S, {}); }
  static WireType fock(WireType inner) { return WireType(Kind::Fock, {std::move(inner)}); }
  /// Flattens nested products; a single part is returned unwrapped.
  static WireType product(const std::vector<WireType>& parts);

  Kind kind() const { return kind_; }
  const WireType& inner() const { return parts_.front(); }
  const std::vector<WireType>& parts() const { return parts_; }

  /// "N", "S", "F(N)", "F(F(N)*N)", "N*S".
  std::string to_string() const;
  static WireType parse(std::string_view text);

  friend bool operator==(const WireType&, const WireType&) = default;
  friend std::strong_ordering operator<=>(const WireType& a, const WireType& b);

 private:
  WireType(Kind k, std::vector<WireType> parts) : kind_(k), parts_(std::move(parts)) {}

  Kind kind_;
  std::vector<WireType> parts_;
};

/// Strings carrying a formula: n, np -> N; s -> S; implications and tensors
/// concatenate (argument first for \, result first for /); @ is transparent;
/// !A is one Fock wire over the bundle of A's strings.
std::vector<WireType> formula_wires(const Formula& f);

/// product(ws); the inverse of unbundle for lists produced by formula_wires.
WireType bundle(const std::vector<WireType>& ws);
std::vector<WireType> unbundle(const WireType& w);

std::string format_wires(const std::vector<WireType>& ws);

}  // namespace tlg
