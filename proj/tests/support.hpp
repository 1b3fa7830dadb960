#pragma once

// Shared fixtures for the test binaries: bundled data, random models and
// closed-form truth conditions computed directly from the model data.

#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tlg/pipeline.hpp"

namespace tlg::testing {

inline std::string data_path(const std::string& rel) { return std::string(TLG_DATA_DIR) + "/" + rel; }

inline const Lexicon& bundled_lexicon() {
  static const Lexicon lex = Lexicon::from_file(data_path("lexicon.json"));
  return lex;
}

/// Distinct meaning diagrams of a sentence under the bundled lexicon.
inline std::vector<Diagram> diagrams_of(const std::string& sentence, const std::string& goal = "") {
  std::optional<Formula> g;
  if (!goal.empty()) g = parse_formula(goal);
  return meaning_diagrams(analyze(sentence, bundled_lexicon(), g), bundled_lexicon());
}

using Pairs = std::set<std::pair<int, int>>;

/// Plain data behind a random model, kept so oracles never read the Model.
struct World {
  int size = 0;
  std::map<std::string, std::set<int>> unary;
  std::map<std::string, Pairs> binary;

  Model model() const {
    std::vector<std::string> names;
    for (int i = 0; i < size; ++i) names.push_back("e" + std::to_string(i));
    Model m(names);
    for (const auto& [w, xs] : unary) {
      Subset s = 0;
      for (int x : xs) s |= Subset{1} << x;
      m.set_unary(w, s);
    }
    for (const auto& [w, ps] : binary) m.set_binary(w, ps);
    return m;
  }
};

inline std::set<int> random_set(std::mt19937& rng, int n) {
  std::set<int> out;
  for (int i = 0; i < n; ++i)
    if (rng() & 1) out.insert(i);
  return out;
}

inline Pairs random_pairs(std::mt19937& rng, int n) {
  Pairs out;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (rng() % 3 == 0) out.insert({i, j});
  return out;
}

/// Random interpretations for every content word of the bundled lexicon.
inline World random_world(std::mt19937& rng, int size) {
  World w;
  w.size = size;
  for (const char* u : {"farmer", "donkey", "dog", "dogs", "snacks", "john", "sleeps", "snores"})
    w.unary[u] = random_set(rng, size);
  for (const char* b : {"owns", "beats", "eats", "eat"}) w.binary[b] = random_pairs(rng, size);
  return w;
}

// Oracles over explicit sets of entities.

using Set = std::set<int>;

inline std::vector<Set> all_subsets(int n) {
  std::vector<Set> out;
  for (int mask = 0; mask < (1 << n); ++mask) {
    Set s;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1) s.insert(i);
    out.push_back(s);
  }
  return out;
}

inline Set image(const Pairs& rel, const Set& b) {
  Set out;
  for (auto [x, y] : rel)
    if (b.count(y)) out.insert(x);
  return out;
}

inline bool includes(const Set& big, const Set& small) {
  for (int x : small)
    if (!big.count(x)) return false;
  return true;
}

inline bool meets(const Set& a, const Set& b) {
  for (int x : a)
    if (b.count(x)) return true;
  return false;
}

inline Set intersect(const Set& a, const Set& b) {
  Set out;
  for (int x : a)
    if (b.count(x)) out.insert(x);
  return out;
}

/// Number of (F1, D1, D2) with F1 ⊇ farmer, D1 and D2 meeting donkey, and
/// F1 ∩ owns(D1) = beats(D2). The sentence is true iff this is positive.
inline long donkey_witnesses(const World& w) {
  const auto subsets = all_subsets(w.size);
  const Set& farmer = w.unary.at("farmer");
  const Set& donkey = w.unary.at("donkey");
  long count = 0;
  for (const auto& f1 : subsets) {
    if (!includes(f1, farmer)) continue;
    for (const auto& d1 : subsets) {
      if (!meets(d1, donkey)) continue;
      const Set owned = intersect(f1, image(w.binary.at("owns"), d1));
      for (const auto& d2 : subsets)
        if (meets(d2, donkey) && owned == image(w.binary.at("beats"), d2)) ++count;
    }
  }
  return count;
}

/// every dog eats snacks: ⟦dog⟧ ⊆ ⟦eats⟧(⟦snacks⟧).
inline bool every_dog_eats_snacks(const World& w) {
  return includes(image(w.binary.at("eats"), w.unary.at("snacks")), w.unary.at("dog"));
}

/// dogs eat snacks: ⟦dogs⟧ = ⟦eat⟧(⟦snacks⟧).
inline bool dogs_eat_snacks(const World& w) {
  return image(w.binary.at("eat"), w.unary.at("snacks")) == w.unary.at("dogs");
}

/// john sleeps. he snores.: ⟦john⟧ = ⟦sleeps⟧ and ⟦john⟧ = ⟦snores⟧.
inline bool john_sleeps_he_snores(const World& w) {
  return w.unary.at("john") == w.unary.at("sleeps") && w.unary.at("john") == w.unary.at("snores");
}

}  // namespace tlg::testing
