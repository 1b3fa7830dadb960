#pragma once

// Shared evaluation engine for the relational (Boolean) and vector
// (rational) semantics: generator tables plus variable-elimination
// contraction of a diagram's factor graph.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <unordered_map>

#include "tlg/error.hpp"
#include "tlg/semantics.hpp"

namespace tlg::detail {

struct BoolRing {
  using T = bool;
  static T one() { return true; }
  static bool is_zero(T v) { return !v; }
  static T add(T a, T b) { return a || b; }
  static T mul(T a, T b) { return a && b; }
  static T count(std::uint64_t n) { return n > 0; }
};

struct RationalRing {
  using T = Rational;
  static T one() { return 1; }
  static bool is_zero(const T& v) { return v == 0; }
  static T add(const T& a, const T& b) { return a + b; }
  static T mul(const T& a, const T& b) { return a * b; }
  static T count(std::uint64_t n) { return T(n); }
};

template <class Ring>
using Table = std::unordered_map<Tuple, typename Ring::T, TupleHash>;

using Fixed = std::vector<std::optional<std::uint64_t>>;

/// Tuples of a word's state over formula_wires(f).
std::vector<Tuple> word_tuples(const std::string& word, const Formula& f, const Model& m, int k, std::uint64_t budget);

/// Tuples (inputs then outputs) of any generator except FockLift. `fixed`
/// optionally pins port values; pinned inputs shrink the enumeration, other
/// pins are only guaranteed to be honoured by the caller's filter.
std::vector<Tuple> primitive_tuples(const Generator& g, const Model& m, int k, const Fixed& fixed,
                                    std::uint64_t budget);

/// Lifts a table over (inputs ++ outputs) of a diagram to the Fock object:
/// i-fold products of entries, i = 1..k, weights multiplied.
template <class Ring>
Table<Ring> lift_table(const Table<Ring>& body, const std::vector<WireType>& ins, const std::vector<WireType>& outs,
                       std::size_t universe, int k, std::uint64_t budget) {
  std::optional<Carrier> in_fock;
  if (!ins.empty()) in_fock.emplace(WireType::fock(bundle(ins)), universe, k, budget);
  const Carrier out_fock(WireType::fock(bundle(outs)), universe, k, budget);
  const Carrier* in_bundle = in_fock ? &in_fock->inner() : nullptr;
  const Carrier& out_bundle = out_fock.inner();

  struct Entry {
    std::uint64_t in, out;
    typename Ring::T w;
  };
  std::vector<Entry> entries;
  for (const auto& [t, w] : body) {
    Tuple tin(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(ins.size()));
    Tuple tout(t.begin() + static_cast<std::ptrdiff_t>(ins.size()), t.end());
    entries.push_back({in_bundle ? in_bundle->pack(tin) : 0, out_bundle.pack(tout), w});
  }
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return std::tie(a.in, a.out) < std::tie(b.in, b.out); });

  Table<Ring> out;
  for (int arity = 1; arity <= k && !entries.empty(); ++arity) {
    std::vector<std::size_t> idx(static_cast<std::size_t>(arity), 0);
    for (;;) {
      Tuple xs, ys;
      typename Ring::T w = Ring::one();
      for (auto i : idx) {
        xs.push_back(entries[i].in);
        ys.push_back(entries[i].out);
        w = Ring::mul(w, entries[i].w);
      }
      Tuple key;
      if (in_fock) key.push_back(in_fock->fock_encode(xs));
      key.push_back(out_fock.fock_encode(ys));
      auto [it, fresh] = out.emplace(std::move(key), w);
      if (!fresh) it->second = Ring::add(it->second, w);
      if (out.size() > budget) throw BudgetExceeded("Fock lift exceeds the element budget");
      std::size_t p = 0;
      while (p < idx.size() && ++idx[p] == entries.size()) idx[p++] = 0;
      if (p == idx.size()) break;
    }
  }
  return out;
}

template <class Ring>
struct Factor {
  std::vector<int> vars;
  Table<Ring> table;
};

template <class Ring>
Factor<Ring> join(const Factor<Ring>& a, const Factor<Ring>& b, std::uint64_t budget) {
  std::vector<std::pair<std::size_t, std::size_t>> shared;  // (pos in a, pos in b)
  std::vector<std::size_t> b_only;
  for (std::size_t j = 0; j < b.vars.size(); ++j) {
    auto it = std::find(a.vars.begin(), a.vars.end(), b.vars[j]);
    if (it != a.vars.end())
      shared.emplace_back(static_cast<std::size_t>(it - a.vars.begin()), j);
    else
      b_only.push_back(j);
  }
  std::unordered_map<Tuple, std::vector<const std::pair<const Tuple, typename Ring::T>*>, TupleHash> index;
  for (const auto& entry : b.table) {
    Tuple key;
    for (const auto& [pa, pb] : shared) key.push_back(entry.first[pb]);
    index[key].push_back(&entry);
  }
  Factor<Ring> out;
  out.vars = a.vars;
  for (auto j : b_only) out.vars.push_back(b.vars[j]);
  for (const auto& [ta, wa] : a.table) {
    Tuple key;
    for (const auto& [pa, pb] : shared) key.push_back(ta[pa]);
    auto it = index.find(key);
    if (it == index.end()) continue;
    for (const auto* eb : it->second) {
      Tuple t = ta;
      for (auto j : b_only) t.push_back(eb->first[j]);
      auto w = Ring::mul(wa, eb->second);
      if (Ring::is_zero(w)) continue;
      out.table.emplace(std::move(t), std::move(w));
      if (out.table.size() > budget) throw BudgetExceeded("contraction exceeds the element budget");
    }
  }
  return out;
}

template <class Ring>
Factor<Ring> sum_out(const Factor<Ring>& f, int var) {
  const auto pos = static_cast<std::size_t>(std::find(f.vars.begin(), f.vars.end(), var) - f.vars.begin());
  Factor<Ring> out;
  for (std::size_t i = 0; i < f.vars.size(); ++i)
    if (i != pos) out.vars.push_back(f.vars[i]);
  for (const auto& [t, w] : f.table) {
    Tuple key;
    for (std::size_t i = 0; i < t.size(); ++i)
      if (i != pos) key.push_back(t[i]);
    auto [it, fresh] = out.table.emplace(std::move(key), w);
    if (!fresh) it->second = Ring::add(it->second, w);
  }
  for (auto it = out.table.begin(); it != out.table.end();)
    it = Ring::is_zero(it->second) ? out.table.erase(it) : std::next(it);
  return out;
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int x) {
    while (parent_[static_cast<std::size_t>(x)] != x) {
      parent_[static_cast<std::size_t>(x)] = parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(x)])];
      x = parent_[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }

 private:
  std::vector<int> parent_;
};

/// Contracts a diagram to its table over (input boundary ++ output boundary).
/// Wiring generators (cups, caps, identities, swaps, copies) become variable
/// identifications; every other generator contributes a factor; variables
/// are eliminated greedily, cheapest join first.
template <class Ring>
Table<Ring> evaluate(const Diagram& d, const Model& m, int k, std::uint64_t budget) {
  if (TypeCheck tc = typecheck(d); !tc) throw DiagramError("cannot evaluate an ill-typed diagram: " + tc.message);

  // One variable per source port, then merged by wiring generators.
  std::map<Port, int> sid;
  std::vector<WireType> port_type;
  for (int i = 0; i < static_cast<int>(d.inputs.size()); ++i) {
    sid[{Port::kBoundary, i}] = static_cast<int>(port_type.size());
    port_type.push_back(d.inputs[static_cast<std::size_t>(i)]);
  }
  for (int n = 0; n < static_cast<int>(d.nodes.size()); ++n)
    for (int p = 0; p < static_cast<int>(d.nodes[static_cast<std::size_t>(n)].outputs.size()); ++p) {
      sid[{n, p}] = static_cast<int>(port_type.size());
      port_type.push_back(d.nodes[static_cast<std::size_t>(n)].outputs[static_cast<std::size_t>(p)]);
    }
  std::map<Port, Port> src_of;
  for (const auto& e : d.edges) src_of[e.dst] = e.src;
  auto in_var = [&](int n, int p) { return sid.at(src_of.at({n, p})); };
  auto out_var = [&](int n, int p) { return sid.at({n, p}); };

  UnionFind uf(port_type.size());
  std::vector<std::pair<int, std::vector<int>>> specs;  // node, raw vars
  for (int n = 0; n < static_cast<int>(d.nodes.size()); ++n) {
    const Generator& g = d.nodes[static_cast<std::size_t>(n)];
    switch (g.kind) {
      case GenKind::Cup:
        uf.unite(in_var(n, 0), in_var(n, 1));
        break;
      case GenKind::Cap:
        uf.unite(out_var(n, 0), out_var(n, 1));
        break;
      case GenKind::Id:
        uf.unite(in_var(n, 0), out_var(n, 0));
        break;
      case GenKind::Swap:
        uf.unite(in_var(n, 0), out_var(n, 1));
        uf.unite(in_var(n, 1), out_var(n, 0));
        break;
      case GenKind::Comult:
        uf.unite(in_var(n, 0), out_var(n, 0));
        uf.unite(in_var(n, 0), out_var(n, 1));
        break;
      case GenKind::Counit:
        break;
      default: {
        std::vector<int> vars;
        for (int p = 0; p < static_cast<int>(g.inputs.size()); ++p) vars.push_back(in_var(n, p));
        for (int p = 0; p < static_cast<int>(g.outputs.size()); ++p) vars.push_back(out_var(n, p));
        specs.emplace_back(n, std::move(vars));
      }
    }
  }

  // Dense renumbering of the merged variables.
  std::map<int, int> dense;
  std::vector<std::uint64_t> var_size;
  auto var_of = [&](int raw) {
    int root = uf.find(raw);
    auto [it, fresh] = dense.emplace(root, static_cast<int>(var_size.size()));
    if (fresh) var_size.push_back(Carrier(port_type[static_cast<std::size_t>(root)], m.size(), k, budget).size());
    return it->second;
  };
  for (std::size_t i = 0; i < port_type.size(); ++i) var_of(static_cast<int>(i));

  std::vector<int> kept;
  for (int i = 0; i < static_cast<int>(d.inputs.size()); ++i) kept.push_back(var_of(sid.at({Port::kBoundary, i})));
  for (int j = 0; j < static_cast<int>(d.outputs.size()); ++j)
    kept.push_back(var_of(sid.at(src_of.at({Port::kBoundary, j}))));

  // Build tables: word states and units first, so that their single values
  // can restrict the enumeration of determiners, projectors and products.
  std::vector<std::optional<std::uint64_t>> fixed(var_size.size());
  bool contradiction = false;
  std::vector<Factor<Ring>> factors;
  auto make_table = [&](const Generator& g, const std::vector<int>& vars) {
    Table<Ring> table;
    if (g.kind == GenKind::FockLift) {
      Table<Ring> body = evaluate<Ring>(*g.body, m, k, budget);
      return lift_table<Ring>(body, g.body->inputs, g.body->outputs, m.size(), k, budget);
    }
    Fixed pins;
    for (int v : vars) pins.push_back(fixed[static_cast<std::size_t>(v)]);
    for (auto& t : primitive_tuples(g, m, k, pins, budget)) table.emplace(std::move(t), Ring::one());
    return table;
  };
  auto add_factor = [&](std::vector<int> vars, Table<Ring> table) {
    // Drop rows that disagree on repeated variables or pinned values, then
    // collapse repeated columns.
    std::vector<int> uniq;
    std::vector<std::size_t> first;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      auto it = std::find(uniq.begin(), uniq.end(), vars[i]);
      first.push_back(it == uniq.end() ? uniq.size() : static_cast<std::size_t>(it - uniq.begin()));
      if (it == uniq.end()) uniq.push_back(vars[i]);
    }
    Factor<Ring> f;
    f.vars = uniq;
    for (auto& [t, w] : table) {
      Tuple row(uniq.size());
      std::vector<bool> set(uniq.size(), false);
      bool ok = true;
      for (std::size_t i = 0; i < t.size() && ok; ++i) {
        const auto slot = first[i];
        if (set[slot] && row[slot] != t[i]) ok = false;
        row[slot] = t[i];
        set[slot] = true;
        const auto& pin = fixed[static_cast<std::size_t>(uniq[slot])];
        if (pin && *pin != t[i]) ok = false;
      }
      if (!ok) continue;
      auto [it, fresh] = f.table.emplace(std::move(row), w);
      if (!fresh) it->second = Ring::add(it->second, w);
    }
    if (f.table.empty()) contradiction = true;
    if (f.table.size() == 1) {
      const Tuple& only = f.table.begin()->first;
      for (std::size_t i = 0; i < uniq.size(); ++i) {
        auto& pin = fixed[static_cast<std::size_t>(uniq[i])];
        if (pin && *pin != only[i]) contradiction = true;
        pin = only[i];
      }
    }
    factors.push_back(std::move(f));
  };

  std::vector<std::vector<int>> spec_vars;
  for (auto& [n, raw] : specs) {
    std::vector<int> vars;
    for (int r : raw) vars.push_back(var_of(r));
    spec_vars.push_back(std::move(vars));
  }
  for (int phase = 0; phase < 2; ++phase)
    for (std::size_t s = 0; s < specs.size(); ++s) {
      const Generator& g = d.nodes[static_cast<std::size_t>(specs[s].first)];
      const bool early = g.kind == GenKind::State || g.kind == GenKind::Unit;
      if (early != (phase == 0)) continue;
      add_factor(spec_vars[s], make_table(g, spec_vars[s]));
      if (contradiction) return {};
    }

  // Greedy variable elimination.
  std::set<int> keep(kept.begin(), kept.end());
  std::set<int> pending;
  for (int v = 0; v < static_cast<int>(var_size.size()); ++v)
    if (!keep.count(v)) pending.insert(v);
  typename Ring::T scale = Ring::one();
  while (!pending.empty()) {
    int best = -1;
    double best_cost = 0;
    for (int v : pending) {
      double cost = 0;
      bool any = false;
      for (const auto& f : factors)
        if (std::find(f.vars.begin(), f.vars.end(), v) != f.vars.end()) {
          cost = any ? cost * static_cast<double>(f.table.size()) : static_cast<double>(f.table.size());
          any = true;
        }
      if (best < 0 || cost < best_cost) {
        best = v;
        best_cost = cost;
      }
    }
    pending.erase(best);
    std::vector<Factor<Ring>> touching, rest;
    for (auto& f : factors)
      (std::find(f.vars.begin(), f.vars.end(), best) != f.vars.end() ? touching : rest).push_back(std::move(f));
    factors = std::move(rest);
    if (touching.empty()) {
      scale = Ring::mul(scale, Ring::count(var_size[static_cast<std::size_t>(best)]));
      continue;
    }
    std::sort(touching.begin(), touching.end(),
              [](const auto& a, const auto& b) { return a.table.size() < b.table.size(); });
    Factor<Ring> acc = std::move(touching.front());
    for (std::size_t i = 1; i < touching.size(); ++i) acc = join<Ring>(acc, touching[i], budget);
    acc = sum_out<Ring>(acc, best);
    if (acc.table.empty()) return {};
    factors.push_back(std::move(acc));
  }

  // Remaining factors mention only boundary variables.
  Factor<Ring> acc;
  acc.table.emplace(Tuple{}, scale);
  for (const auto& f : factors) {
    acc = join<Ring>(acc, f, budget);
    if (acc.table.empty()) return {};
  }
  for (int v : keep)
    if (std::find(acc.vars.begin(), acc.vars.end(), v) == acc.vars.end()) {
      Factor<Ring> all;
      all.vars = {v};
      for (std::uint64_t x = 0; x < var_size[static_cast<std::size_t>(v)]; ++x) all.table.emplace(Tuple{x}, Ring::one());
      acc = join<Ring>(acc, all, budget);
    }
  Table<Ring> out;
  for (const auto& [t, w] : acc.table) {
    Tuple key;
    for (int v : kept)
      key.push_back(t[static_cast<std::size_t>(std::find(acc.vars.begin(), acc.vars.end(), v) - acc.vars.begin())]);
    auto [it, fresh] = out.emplace(std::move(key), w);
    if (!fresh) it->second = Ring::add(it->second, w);
  }
  return out;
}

}  // namespace tlg::detail
