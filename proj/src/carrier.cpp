#include "tlg/carrier.hpp"

#include "tlg/error.hpp"

namespace tlg {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b, std::uint64_t budget, const WireType& w) {
  if (a != 0 && b > budget / a) throw BudgetExceeded("carrier of " + w.to_string() + " exceeds the element budget");
  return a * b;
}

}  // namespace

Carrier::Carrier(const WireType& w, std::size_t universe, int k, std::uint64_t budget)
    : type_(w), universe_(universe), k_(k), budget_(budget) {
  if (k < 1) throw ModelError("copy bound k must be positive");
  switch (w.kind()) {
    case WireType::Kind::N:
      if (universe >= 63 || (std::uint64_t{1} << universe) > budget)
        throw BudgetExceeded("carrier of N exceeds the element budget");
      size_ = std::uint64_t{1} << universe;
      break;
    case WireType::Kind::S:
      size_ = 1;
      break;
    case WireType::Kind::Fock: {
      children_.emplace_back(w.inner(), universe, k, budget);
      const std::uint64_t base = children_.front().size();
      std::uint64_t block = 1;
      size_ = 0;
      for (int i = 1; i <= k; ++i) {
        block = checked_mul(block, base, budget, w);
        offsets_.push_back(size_);
        size_ += block;
        if (size_ > budget) throw BudgetExceeded("carrier of " + w.to_string() + " exceeds the element budget");
      }
      break;
    }
    case WireType::Kind::Product:
      for (const auto& p : w.parts()) {
        children_.emplace_back(p, universe, k, budget);
        size_ = checked_mul(size_, children_.back().size(), budget, w);
      }
      break;
  }
}

std::uint64_t Carrier::fock_encode(const Tuple& items) const {
  if (items.empty() || static_cast<int>(items.size()) > k_) throw ModelError("Fock element arity out of range");
  std::uint64_t x = 0;
  for (auto i : items) x = x * inner().size() + i;
  return offsets_[items.size() - 1] + x;
}

Tuple Carrier::fock_decode(std::uint64_t x) const {
  std::size_t arity = offsets_.size();
  while (arity > 1 && x < offsets_[arity - 1]) --arity;
  x -= offsets_[arity - 1];
  Tuple items(arity);
  for (std::size_t i = arity; i-- > 0;) {
    items[i] = x % inner().size();
    x /= inner().size();
  }
  return items;
}

std::uint64_t Carrier::pack(const Tuple& parts) const {
  if (type_.kind() != WireType::Kind::Product) return parts.at(0);
  std::uint64_t x = 0;
  for (std::size_t i = 0; i < children_.size(); ++i) x = x * children_[i].size() + parts.at(i);
  return x;
}

Tuple Carrier::unpack(std::uint64_t x) const {
  if (type_.kind() != WireType::Kind::Product) return {x};
  Tuple parts(children_.size());
  for (std::size_t i = children_.size(); i-- > 0;) {
    parts[i] = x % children_[i].size();
    x /= children_[i].size();
  }
  return parts;
}

std::vector<std::uint64_t> Carrier::elements_over(const std::vector<Subset>& allowed) const {
  switch (type_.kind()) {
    case WireType::Kind::N:
      return {allowed.begin(), allowed.end()};
    case WireType::Kind::S:
      return {0};
    case WireType::Kind::Fock: {
      const auto base = inner().elements_over(allowed);
      std::vector<std::uint64_t> out;
      for (int arity = 1; arity <= k_ && !base.empty(); ++arity) {
        std::vector<std::size_t> idx(static_cast<std::size_t>(arity), 0);
        for (;;) {
          Tuple items;
          for (auto i : idx) items.push_back(base[i]);
          out.push_back(fock_encode(items));
          if (out.size() > budget_) throw BudgetExceeded("Fock enumeration exceeds the element budget");
          std::size_t p = 0;
          while (p < idx.size() && ++idx[p] == base.size()) idx[p++] = 0;
          if (p == idx.size()) break;
        }
      }
      return out;
    }
    case WireType::Kind::Product: {
      std::vector<Tuple> acc{{}};
      for (const auto& c : children_) {
        std::vector<Tuple> next;
        for (const auto& prefix : acc)
          for (auto e : c.elements_over(allowed)) {
            next.push_back(prefix);
            next.back().push_back(e);
          }
        acc = std::move(next);
      }
      std::vector<std::uint64_t> out;
      for (const auto& t : acc) out.push_back(pack(t));
      return out;
    }
  }
  return {};
}

std::string Carrier::format(std::uint64_t x, const Model& m) const {
  switch (type_.kind()) {
    case WireType::Kind::N:
      return m.format_subset(x);
    case WireType::Kind::S:
      return "*";
    case WireType::Kind::Fock: {
      Tuple items = fock_decode(x);
      std::string out = "((";
      for (std::size_t i = 0; i < items.size(); ++i) out += (i ? ", " : "") + inner().format(items[i], m);
      return out + "), " + std::to_string(items.size()) + ")";
    }
    case WireType::Kind::Product: {
      Tuple parts = unpack(x);
      std::string out = "(";
      for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? ", " : "") + children_[i].format(parts[i], m);
      return out + ")";
    }
  }
  return "?";
}

Carrier interp_object(const WireType& w, const Model& m, int k, std::uint64_t budget) {
  return Carrier(w, m.size(), k, budget);
}

}  // namespace tlg
