#pragma once

// Algebraic law checks over Rel and over indicator tensors. Each check
// returns the names of the laws that failed, so callers can report them.

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "tlg/semantics.hpp"

namespace tlg::testing {

struct LawReport {
  int checked = 0;
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    ++checked;
    if (!ok) failures.push_back(what);
  }
  bool ok() const { return failures.empty(); }
};

/// Morphisms of one semantics, built from generators over a fixed universe.
template <class M>
struct Algebra {
  std::function<M(const Generator&)> gen;
  std::function<M(const std::vector<WireType>&)> id;
  std::function<M(const M&)> converse;
};

template <class M>
M seq(const M& a, const M& b) {
  return a.then(b);
}
template <class M>
M par(const M& a, const M& b) {
  return a.tensor(b);
}

/// Bialgebra (monoid, comonoid, compatibility), Frobenius and snake laws on N.
template <class M>
void check_structure_laws(const Algebra<M>& alg, const std::string& tag, LawReport& rep) {
  const WireType N = WireType::n();
  const M mu = alg.gen(Generator::mult()), eta = alg.gen(Generator::unit());
  const M delta = alg.gen(Generator::comult()), eps = alg.gen(Generator::counit());
  const M sigma = alg.gen(Generator::swap(N, N));
  const M cup = alg.gen(Generator::cup(N)), cap = alg.gen(Generator::cap(N));
  const M id = alg.id({N}), id_unit = alg.id({});
  const M delta_dag = alg.converse(delta);

  rep.expect(seq(par(mu, id), mu) == seq(par(id, mu), mu), tag + " monoid associativity");
  rep.expect(seq(par(eta, id), mu) == id, tag + " left unit");
  rep.expect(seq(par(id, eta), mu) == id, tag + " right unit");
  rep.expect(seq(sigma, mu) == mu, tag + " commutativity");
  rep.expect(seq(delta, par(delta, id)) == seq(delta, par(id, delta)), tag + " comonoid coassociativity");
  rep.expect(seq(delta, par(eps, id)) == id, tag + " left counit");
  rep.expect(seq(delta, par(id, eps)) == id, tag + " right counit");
  rep.expect(seq(delta, sigma) == delta, tag + " cocommutativity");
  rep.expect(seq(mu, delta) == seq(seq(par(delta, delta), par(par(id, sigma), id)), par(mu, mu)),
             tag + " bialgebra compatibility");
  rep.expect(seq(eta, delta) == par(eta, eta), tag + " unit copies");
  rep.expect(seq(mu, eps) == par(eps, eps), tag + " counit deletes");
  rep.expect(seq(eta, eps) == id_unit, tag + " unit-counit");
  rep.expect(seq(par(delta, id), par(id, delta_dag)) == seq(delta_dag, delta), tag + " Frobenius left");
  rep.expect(seq(par(id, delta), par(delta_dag, id)) == seq(delta_dag, delta), tag + " Frobenius right");
  rep.expect(seq(par(cap, id), par(id, cup)) == id, tag + " snake left");
  rep.expect(seq(par(id, cap), par(cup, id)) == id, tag + " snake right");
}

inline Algebra<FinRel> rel_algebra(const Model& m, int k = 2) {
  return {[&m, k](const Generator& g) { return generator_rel(g, m, k); },
          [&m, k](const std::vector<WireType>& w) { return FinRel::identity(w, m.size(), k); },
          [](const FinRel& r) { return r.converse(); }};
}

inline Algebra<SparseTensor> vec_algebra(const Model& m, int k = 2) {
  return {[&m, k](const Generator& g) { return generator_vec(g, m, k); },
          [&m, k](const std::vector<WireType>& w) { return SparseTensor::indicator(FinRel::identity(w, m.size(), k)); },
          [](const SparseTensor& t) { return SparseTensor::indicator(t.support().converse()); }};
}

inline Model plain_universe(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("u" + std::to_string(i));
  return Model(names, n);
}

/// Random relation between single wires whose carriers have at most four
/// elements: N over a universe of size <= 2, or S.
inline FinRel random_relation(std::mt19937& rng, std::size_t universe) {
  const WireType N = WireType::n(), S = WireType::s();
  const WireType src = rng() % 4 == 0 ? S : N, dst = rng() % 4 == 0 ? S : N;
  FinRel r({src}, {dst});
  const std::uint64_t ns = Carrier(src, universe, 1).size(), nd = Carrier(dst, universe, 1).size();
  const unsigned density = 1 + rng() % 3;
  for (std::uint64_t a = 0; a < ns; ++a)
    for (std::uint64_t b = 0; b < nd; ++b)
      if (rng() % 4 < density) r.insert({a}, {b});
  return r;
}

inline FinRel power(const FinRel& r, int n) {
  FinRel out = r;
  for (int i = 1; i < n; ++i) out = out.tensor(r);
  return out;
}

/// pi_n . F(R) = R^n . pi_n for `trials` random relations, n <= k <= 3.
inline void check_projector_naturality(int trials, unsigned seed, LawReport& rep) {
  std::mt19937 rng(seed);
  for (int t = 0; t < trials; ++t) {
    const std::size_t universe = 1 + rng() % 2;
    const int k = 1 + static_cast<int>(rng() % 3);
    const int n = 1 + static_cast<int>(rng() % static_cast<unsigned>(k));
    const FinRel r = random_relation(rng, universe);
    const FinRel lhs = fock_lift(r, universe, k).then(projection(r.target(), n, universe, k));
    const FinRel rhs = projection(r.source(), n, universe, k).then(power(r, n));
    rep.expect(lhs == rhs, "projector naturality (trial " + std::to_string(t) + ", n=" + std::to_string(n) +
                               ", k=" + std::to_string(k) + ")");
  }
}

/// Contraction of indicator tensors counts relational witnesses, and its
/// support is relational composition.
inline void check_indicator_functoriality(int trials, unsigned seed, LawReport& rep) {
  std::mt19937 rng(seed);
  for (int t = 0; t < trials; ++t) {
    const std::size_t universe = 1 + rng() % 2;
    FinRel r = random_relation(rng, universe);
    FinRel s = random_relation(rng, universe);
    FinRel s2(r.target(), s.target());
    const std::uint64_t nd = Carrier(s.target().front(), universe, 1).size();
    const std::uint64_t nm = Carrier(r.target().front(), universe, 1).size();
    for (std::uint64_t b = 0; b < nm; ++b)
      for (std::uint64_t c = 0; c < nd; ++c)
        if (rng() % 2) s2.insert({b}, {c});
    const SparseTensor prod = SparseTensor::indicator(r).then(SparseTensor::indicator(s2));
    bool counts = true;
    const std::uint64_t ns = Carrier(r.source().front(), universe, 1).size();
    for (std::uint64_t a = 0; a < ns; ++a)
      for (std::uint64_t c = 0; c < nd; ++c) {
        long witnesses = 0;
        for (std::uint64_t b = 0; b < nm; ++b) witnesses += r.contains({a}, {b}) && s2.contains({b}, {c});
        counts = counts && prod.at({a}, {c}) == witnesses;
      }
    rep.expect(counts, "indicator contraction counts witnesses (trial " + std::to_string(t) + ")");
    rep.expect(prod.support() == r.then(s2), "indicator support is composition (trial " + std::to_string(t) + ")");
  }
}

/// Every law suite: structure laws for |U| = 0..3 in both semantics,
/// projector naturality and indicator functoriality.
inline LawReport check_all_laws() {
  LawReport rep;
  for (std::size_t u = 0; u <= 3; ++u) {
    const Model m = plain_universe(u);
    check_structure_laws(rel_algebra(m), "rel |U|=" + std::to_string(u), rep);
    check_structure_laws(vec_algebra(m), "vec |U|=" + std::to_string(u), rep);
  }
  check_projector_naturality(100, 2024, rep);
  check_indicator_functoriality(100, 77, rep);
  return rep;
}

}  // namespace tlg::testing
