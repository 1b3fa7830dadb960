#include "tlg/prover.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace tlg {

namespace {

using Formulas = std::vector<Formula>;

struct Outcome {
  std::vector<ProofTree> proofs;
  bool truncated = false;
};

// One backward rule application. `order` rearranges the current antecedent
// (moving @-formulas only); rule data and premises refer to that arrangement.
struct Candidate {
  std::vector<int> order;
  Rule rule;
  RuleData data;
  std::vector<Sequent> premises;
};

// Positions of the current antecedent split into @-formulas and the rest.
struct Layout {
  std::vector<int> plain;                // indices of non-@ formulas, in order
  std::vector<int> rank;                 // rank[i] = index into plain, or -1
  std::vector<std::vector<int>> groups;  // @-formula occurrences grouped by formula

  explicit Layout(const Formulas& ante) : rank(ante.size(), -1) {
    std::map<Formula, std::size_t> group_of;
    for (int i = 0; i < static_cast<int>(ante.size()); ++i) {
      const Formula& f = ante[static_cast<std::size_t>(i)];
      if (f.is_nabla()) {
        auto [it, fresh] = group_of.emplace(f, groups.size());
        if (fresh) groups.emplace_back();
        groups[it->second].push_back(i);
      } else {
        rank[static_cast<std::size_t>(i)] = static_cast<int>(plain.size());
        plain.push_back(i);
      }
    }
  }

  // Every way of choosing how many occurrences of each @-group to take.
  std::vector<std::vector<int>> count_choices() const {
    std::vector<std::vector<int>> out{{}};
    for (const auto& g : groups) {
      std::vector<std::vector<int>> next;
      for (const auto& prefix : out)
        for (int c = 0; c <= static_cast<int>(g.size()); ++c) {
          next.push_back(prefix);
          next.back().push_back(c);
        }
      out = std::move(next);
    }
    return out;
  }

  // Picks `counts[g]` occurrences per group, preferring those nearest to [lo, hi).
  std::vector<int> pick(const std::vector<int>& counts, int lo, int hi) const {
    std::vector<int> chosen;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      std::vector<int> members = groups[g];
      auto dist = [lo, hi](int x) { return x < lo ? lo - x : (x >= hi ? x - hi + 1 : 0); };
      std::stable_sort(members.begin(), members.end(), [&](int a, int b) { return dist(a) < dist(b); });
      chosen.insert(chosen.end(), members.begin(), members.begin() + counts[g]);
    }
    return chosen;
  }
};

Formulas arrange(const Formulas& ante, const std::vector<int>& order) {
  Formulas out;
  out.reserve(order.size());
  for (int i : order) out.push_back(ante[static_cast<std::size_t>(i)]);
  return out;
}

std::vector<int> identity_order(std::size_t n) {
  std::vector<int> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<int>(i);
  return order;
}

class Search {
 public:
  explicit Search(const SearchConfig& cfg) : cfg_(cfg) {}

  Outcome solve(const Sequent& s, int depth) {
    if (auto it = memo_.find(s); it != memo_.end()) return it->second;
    if (depth <= 0) return {{}, true};

    Outcome out;
    if (s.antecedent.size() == 1 && s.antecedent[0] == s.succedent) {
      // A -> A is closed by the axiom; expanded identity proofs are not enumerated.
      out.proofs.emplace_back(Rule::Axiom, s);
      memo_.emplace(s, out);
      return out;
    }

    std::vector<Candidate> cands;
    candidates(s, cands);
    std::unordered_set<std::string> seen;
    std::vector<std::pair<std::string, ProofTree>> found;
    for (const auto& cand : cands) {
      std::vector<Outcome> subs;
      bool ok = true;
      for (const auto& prem : cand.premises) {
        subs.push_back(solve(prem, depth - 1));
        out.truncated = out.truncated || subs.back().truncated;
        if (subs.back().proofs.empty()) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      Sequent target{arrange(s.antecedent, cand.order), s.succedent};
      std::vector<std::size_t> idx(subs.size(), 0);
      int produced = 0;
      for (;;) {
        std::vector<ProofTree> premises;
        for (std::size_t i = 0; i < subs.size(); ++i) premises.push_back(subs[i].proofs[idx[i]]);
        ProofTree tree = wrap_perms(s, cand.order, ProofTree(cand.rule, target, std::move(premises), cand.data));
        std::string key = proof_key(tree);
        if (seen.insert(key).second) found.emplace_back(std::move(key), std::move(tree));
        if (++produced >= cfg_.max_proofs) break;
        std::size_t i = 0;
        while (i < idx.size() && ++idx[i] == subs[i].proofs.size()) idx[i++] = 0;
        if (i == idx.size()) break;
      }
      if (!cfg_.enumerate_all && !found.empty()) break;
    }

    std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
      auto na = a.second.node_count(), nb = b.second.node_count();
      return na != nb ? na < nb : a.first < b.first;
    });
    std::size_t keep = cfg_.enumerate_all ? static_cast<std::size_t>(cfg_.max_proofs) : 1;
    for (std::size_t i = 0; i < found.size() && i < keep; ++i) out.proofs.push_back(std::move(found[i].second));
    if (!out.truncated) memo_.emplace(s, out);
    return out;
  }

 private:
  void candidates(const Sequent& s, std::vector<Candidate>& out) const {
    const Formulas& ante = s.antecedent;
    const int n = static_cast<int>(ante.size());
    const Formula& goal = s.succedent;
    const Layout lay(ante);
    const int m = static_cast<int>(lay.plain.size());
    const auto id = identity_order(ante.size());

    // Right rules.
    switch (goal.connective()) {
      case Connective::Under: {
        Formulas prem{goal.argument()};
        prem.insert(prem.end(), ante.begin(), ante.end());
        out.push_back({id, Rule::UnderR, {}, {{prem, goal.result()}}});
        break;
      }
      case Connective::Over: {
        Formulas prem = ante;
        prem.push_back(goal.argument());
        out.push_back({id, Rule::OverR, {}, {{prem, goal.result()}}});
        break;
      }
      case Connective::Tensor: {
        const auto choices = lay.count_choices();
        for (int split = 0; split <= m; ++split) {
          const int region_hi = split < m ? lay.plain[static_cast<std::size_t>(split)] : n;
          for (const auto& counts : choices) {
            std::vector<int> left_nablas = lay.pick(counts, 0, region_hi);
            std::vector<int> gamma, sigma;
            for (int x = 0; x < n; ++x) {
              bool in_gamma = lay.rank[static_cast<std::size_t>(x)] >= 0
                                  ? lay.rank[static_cast<std::size_t>(x)] < split
                                  : std::count(left_nablas.begin(), left_nablas.end(), x) > 0;
              (in_gamma ? gamma : sigma).push_back(x);
            }
            if (gamma.empty() || sigma.empty()) continue;
            std::vector<int> order = gamma;
            order.insert(order.end(), sigma.begin(), sigma.end());
            RuleData d;
            d.gamma = static_cast<int>(gamma.size());
            out.push_back({order, Rule::TensorR, d,
                           {{arrange(ante, gamma), goal.left()}, {arrange(ante, sigma), goal.right()}}});
          }
        }
        break;
      }
      case Connective::Bang:
        if (n == 1 && ante[0].is_bang()) out.push_back({id, Rule::BangR, {}, {{{ante[0].inner()}, goal.inner()}}});
        break;
      case Connective::Nabla:
        if (n == 1 && ante[0].is_nabla())
          out.push_back({id, Rule::NablaR, {}, {{{ante[0].inner()}, goal.inner()}}});
        break;
      case Connective::Atom:
        break;
    }

    // Left rules on non-@ formulas.
    const auto choices = lay.count_choices();
    for (int j = 0; j < m; ++j) {
      const int p = lay.plain[static_cast<std::size_t>(j)];
      const Formula& f = ante[static_cast<std::size_t>(p)];
      switch (f.connective()) {
        case Connective::Under:
          for (int i = j; i >= 0; --i) {
            const int lo = i > 0 ? lay.plain[static_cast<std::size_t>(i - 1)] + 1 : 0;
            for (const auto& counts : choices)
              add_implication_left(s, lay, Rule::UnderL, j, i, lay.pick(counts, lo, p), out);
          }
          break;
        case Connective::Over:
          for (int i = j + 1; i <= m; ++i) {
            const int hi = i < m ? lay.plain[static_cast<std::size_t>(i)] : n;
            for (const auto& counts : choices)
              add_implication_left(s, lay, Rule::OverL, j, i, lay.pick(counts, p + 1, hi), out);
          }
          break;
        case Connective::Tensor: {
          Formulas prem = ante;
          prem[static_cast<std::size_t>(p)] = f.left();
          prem.insert(prem.begin() + p + 1, f.right());
          RuleData d;
          d.principal = p;
          out.push_back({id, Rule::TensorL, d, {{prem, goal}}});
          break;
        }
        case Connective::Bang:
          for (int c = 1; c <= cfg_.k; ++c) {
            Formulas prem(ante.begin(), ante.begin() + p);
            prem.insert(prem.end(), static_cast<std::size_t>(c), f.inner());
            prem.insert(prem.end(), ante.begin() + p + 1, ante.end());
            RuleData d;
            d.principal = p;
            d.copies = c;
            out.push_back({id, Rule::BangL, d, {{prem, goal}}});
          }
          break;
        default:
          break;
      }
    }

    // @L: drop the modality, placing the inner formula in any gap between
    // non-@ formulas (the position is irrelevant when it is itself an @-formula).
    std::set<Sequent> seen_premises;
    for (const auto& group : lay.groups) {
      const Formula& inner = ante[static_cast<std::size_t>(group.front())].inner();
      const int gaps = inner.is_nabla() ? 0 : m;
      for (int g = 0; g <= gaps; ++g) {
        const int lo = g > 0 ? lay.plain[static_cast<std::size_t>(g - 1)] + 1 : 0;
        const int hi = g < m ? lay.plain[static_cast<std::size_t>(g)] : n;
        int e = group.front();
        if (!inner.is_nabla()) {
          std::vector<int> one(lay.groups.size(), 0);
          one[static_cast<std::size_t>(&group - lay.groups.data())] = 1;
          e = lay.pick(one, lo, hi).front();
        }
        std::vector<int> order;
        const bool in_place = inner.is_nabla() || (e >= lo && e < hi);
        for (int x = 0; x < n; ++x) {
          if (x == e && !in_place) continue;
          if (!in_place && g < m && x == hi) order.push_back(e);
          order.push_back(x);
        }
        if (!in_place && g == m) order.push_back(e);
        const int principal = static_cast<int>(std::find(order.begin(), order.end(), e) - order.begin());
        Formulas prem = arrange(ante, order);
        prem[static_cast<std::size_t>(principal)] = inner;
        Sequent premise{prem, goal};
        if (!seen_premises.insert(premise).second) continue;
        RuleData d;
        d.principal = principal;
        out.push_back({order, Rule::NablaL, d, {std::move(premise)}});
      }
    }
  }

  // \L or /L with principal plain[j]; the non-@ part of Sigma is plain[i..j)
  // for \L and plain[j+1..i) for /L, plus the chosen @-occurrences.
  void add_implication_left(const Sequent& s, const Layout& lay, Rule rule, int j, int i,
                            const std::vector<int>& sigma_nablas, std::vector<Candidate>& out) const {
    const Formulas& ante = s.antecedent;
    const int n = static_cast<int>(ante.size());
    const bool under = rule == Rule::UnderL;
    const int p = lay.plain[static_cast<std::size_t>(j)];
    const int sig_lo = under ? i : j + 1;
    const int sig_hi = under ? j : i;
    std::vector<int> gamma, sigma, delta;
    for (int x = 0; x < n; ++x) {
      if (x == p) continue;
      const int r = lay.rank[static_cast<std::size_t>(x)];
      if (r >= 0) {
        if (r >= sig_lo && r < sig_hi)
          sigma.push_back(x);
        else
          (r < j ? gamma : delta).push_back(x);
      } else if (std::count(sigma_nablas.begin(), sigma_nablas.end(), x)) {
        sigma.push_back(x);
      } else {
        (x < p ? gamma : delta).push_back(x);
      }
    }
    if (sigma.empty()) return;
    std::vector<int> order = gamma;
    if (under) {
      order.insert(order.end(), sigma.begin(), sigma.end());
      order.push_back(p);
    } else {
      order.push_back(p);
      order.insert(order.end(), sigma.begin(), sigma.end());
    }
    order.insert(order.end(), delta.begin(), delta.end());

    const Formula& f = ante[static_cast<std::size_t>(p)];
    Formulas rest = arrange(ante, gamma);
    rest.push_back(f.result());
    for (int x : delta) rest.push_back(ante[static_cast<std::size_t>(x)]);
    RuleData d;
    d.gamma = static_cast<int>(gamma.size());
    d.sigma = static_cast<int>(sigma.size());
    out.push_back({order, rule, d, {{arrange(ante, sigma), f.argument()}, {rest, s.succedent}}});
  }

  // Emits Perm nodes taking `s` to the arrangement `order`, one @-formula move
  // per node, ending in `inner`.
  static ProofTree wrap_perms(const Sequent& s, const std::vector<int>& order, ProofTree inner) {
    struct Step {
      std::vector<int> before;
      int from, to;
    };
    std::vector<Step> steps;
    std::vector<int> cur = identity_order(order.size());
    auto pos = [&cur](int e) { return static_cast<int>(std::find(cur.begin(), cur.end(), e) - cur.begin()); };
    for (std::size_t j = 0; j < order.size(); ++j) {
      const int e = order[j];
      if (!s.antecedent[static_cast<std::size_t>(e)].is_nabla()) continue;
      const int at = pos(e);
      const int want = j == 0 ? 0 : pos(order[j - 1]) + 1;
      if (at == want) continue;
      std::vector<int> before = cur;
      cur.erase(cur.begin() + at);
      const int to = j == 0 ? 0 : pos(order[j - 1]) + 1;
      cur.insert(cur.begin() + to, e);
      steps.push_back({std::move(before), at, to});
    }
    if (cur != order) throw std::logic_error("perm chain does not reach the target arrangement");
    ProofTree tree = std::move(inner);
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
      RuleData d;
      d.from = it->from;
      d.to = it->to;
      tree = ProofTree(Rule::Perm, {arrange(s.antecedent, it->before), s.succedent}, {tree}, d);
    }
    return tree;
  }

  SearchConfig cfg_;
  std::unordered_map<Sequent, Outcome, SequentHash> memo_;
};

}  // namespace

SearchResult prove(const Sequent& seq, const SearchConfig& cfg) {
  if (cfg.k < 1 || cfg.depth_limit < 1 || cfg.max_proofs < 1)
    throw std::invalid_argument("search bounds must be positive");
  if (seq.antecedent.empty()) throw std::invalid_argument("sequent antecedent must be non-empty");
  Search search(cfg);
  Outcome o = search.solve(seq, cfg.depth_limit);
  SearchResult r;
  r.proofs = std::move(o.proofs);
  r.truncated = o.truncated;
  r.status = !r.proofs.empty() ? SearchStatus::Proved
                               : (o.truncated ? SearchStatus::DepthExhausted : SearchStatus::Unprovable);
  return r;
}

}  // namespace tlg
