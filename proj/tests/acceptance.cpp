// Acceptance run: one PASS/FAIL line per criterion, exit status = number of
// failed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "laws.hpp"
#include "support.hpp"

using namespace tlg;
using namespace tlg::testing;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Pinned limits.
constexpr double kProofSeconds = 5.0;
constexpr double kSweepSeconds = 60.0;
constexpr int kDonkeyModels = 1000;
constexpr int kEquivalenceModels = 250;

const char* kDonkey = "every farmer who owns a donkey beats it";
const char* kDonkeySequent = "np/n, n, (np\\np)/(np\\s), np\\s/np, !@(!@np/n), n, np\\s/np, @np\\np -> s";
const char* kTransitiveSequent = "np, np\\s/np, np -> s";
const char* kDiscourseSequent = "!@np, np\\s, @np\\np, np\\s -> s.s";

struct Verdict {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, const std::function<Verdict()>& body) {
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  if (!v.pass) ++failures;
  std::cout << (v.pass ? "PASS" : "FAIL") << "  " << id << ". " << name << ": " << v.detail << std::endl;
}

std::size_t count_of(const std::multiset<std::string>& m, const char* key) { return m.count(key); }

struct Timed {
  SearchResult result;
  double secs = 0;
};

Timed search(const char* sequent) {
  SearchConfig cfg;
  cfg.k = 2;
  cfg.depth_limit = 64;
  const auto t0 = Clock::now();
  Timed t{prove(parse_sequent(sequent), cfg), 0};
  t.secs = seconds_since(t0);
  return t;
}

// 1
Verdict golden_derivations() {
  std::ostringstream d;
  bool ok = true;
  d.setf(std::ios::fixed);
  d.precision(3);

  const Timed a = search(kTransitiveSequent);
  bool a_ok = a.secs < kProofSeconds && a.result.proofs.size() == 1;
  if (a_ok) {
    const auto m = a.result.proofs[0].rule_multiset();
    a_ok = m.size() == 5 && count_of(m, "/L") == 1 && count_of(m, "\\L") == 1 && count_of(m, "Axiom") == 3;
  }
  ok = ok && a_ok;
  d << "(a) " << (a_ok ? "ok" : "bad") << " " << a.secs << "s";

  const Timed b = search(kDiscourseSequent);
  bool b_ok = false;
  for (const auto& p : b.result.proofs) {
    const auto m = p.rule_multiset();
    if (count_of(m, "!L") && count_of(m, "Perm") && count_of(m, "@L") && count_of(m, ".R")) b_ok = true;
  }
  b_ok = b_ok && b.secs < kProofSeconds;
  ok = ok && b_ok;
  d << ", (b) " << (b_ok ? "ok" : "bad") << " " << b.secs << "s";

  const Timed c = search(kDonkeySequent);
  bool c_ok = false;
  for (const auto& p : c.result.proofs) {
    const auto m = p.rule_multiset();
    if (count_of(m, "!L") == 2 && count_of(m, "@L") == 2 && count_of(m, "Perm") >= 1) c_ok = true;
  }
  c_ok = c_ok && c.secs < kProofSeconds;
  ok = ok && c_ok;
  d << ", (c) " << (c_ok ? "ok" : "bad") << " " << c.secs << "s (" << c.result.proofs.size() << " proofs)";
  return {ok, d.str()};
}

// 2
Verdict worked_example() {
  World w;
  w.size = 3;  // a, b, c
  w.unary["dog"] = {0, 1};
  w.unary["snacks"] = {2};
  w.binary["eats"] = {{0, 2}, {1, 2}};
  const auto ds = diagrams_of("every dog eats snacks");
  if (ds.empty()) return {false, "no diagram"};
  const bool closed_true = every_dog_eats_snacks(w);
  bool ok = closed_true;
  for (const auto& d : ds) ok = ok && sentence_truth(d, w.model(), 2) == closed_true;
  w.binary["eats"].erase({1, 2});
  const bool closed_false = every_dog_eats_snacks(w);
  ok = ok && !closed_false;
  for (const auto& d : ds) ok = ok && sentence_truth(d, w.model(), 2) == closed_false;
  return {ok, std::string("full model ") + (closed_true ? "true" : "false") + ", without (b,c) " +
                  (closed_false ? "true" : "false") + ", pipeline agrees on " + std::to_string(ds.size()) +
                  " diagram(s)"};
}

// 3
Verdict donkey_sweep() {
  const auto t0 = Clock::now();
  const auto ds = diagrams_of(kDonkey);
  if (ds.empty()) return {false, "no diagram"};
  std::mt19937 rng(20240501);
  int agree = 0, truths = 0;
  for (int i = 0; i < kDonkeyModels; ++i) {
    const World w = random_world(rng, 3);
    const Model m = w.model();
    const bool oracle = donkey_witnesses(w) > 0;
    bool all = true;
    for (const auto& d : ds) all = all && sentence_truth(d, m, 2) == oracle;
    agree += all;
    truths += oracle;
  }
  const double secs = seconds_since(t0);
  std::ostringstream d;
  d << agree << "/" << kDonkeyModels << " random |U|=3 models agree (" << truths << " true), " << secs << "s";
  return {agree == kDonkeyModels && secs < kSweepSeconds, d.str()};
}

// 4
Verdict rel_vec_equivalence() {
  const std::vector<std::pair<const char*, const char*>> sentences = {
      {"dogs eat snacks", ""}, {"every dog eats snacks", ""}, {"John sleeps. He snores.", ""}, {kDonkey, ""}};
  std::vector<Diagram> ds;
  for (const auto& [s, goal] : sentences)
    for (auto& d : diagrams_of(s, goal)) ds.push_back(std::move(d));
  std::mt19937 rng(99);
  int checks = 0, agree = 0, nonzero = 0;
  for (int i = 0; i < kEquivalenceModels; ++i) {
    const Model m = random_world(rng, 1 + i % 3).model();
    for (const auto& d : ds) {
      const Rational scalar = sentence_scalar(d, m, 2);
      const bool truth = sentence_truth(d, m, 2);
      ++checks;
      agree += (scalar != 0) == truth && scalar >= 0;
      nonzero += scalar != 0;
    }
  }
  std::ostringstream d;
  d << agree << "/" << checks << " (model, diagram) pairs agree over " << kEquivalenceModels << " models, "
    << nonzero << " true";
  return {agree == checks, d.str()};
}

// 5
Verdict algebraic_laws() {
  const LawReport rep = check_all_laws();
  std::string detail = std::to_string(rep.checked) + " law instances, " + std::to_string(rep.failures.size()) +
                       " counterexamples";
  if (!rep.ok()) detail += " (first: " + rep.failures.front() + ")";
  return {rep.ok(), detail};
}

// 6
Verdict diagram_structure() {
  const auto donkey = diagrams_of(kDonkey);
  std::multiset<std::string> want = {"Mult", "Proj(2)", "Swap", "Cup", "Cup", "Cup"};
  bool ok = !donkey.empty();
  for (const auto& d : donkey) ok = ok && generator_multiset(d, false) == want;
  const auto rel = diagrams_of("dogs who eat snacks", "np");
  bool rel_ok = rel.size() == 1 && generator_multiset(rel[0], false).count("Mult") == 1 &&
                rel[0].outputs == std::vector<WireType>{WireType::n()};
  std::string got;
  if (!donkey.empty())
    for (const auto& g : generator_multiset(donkey[0], false)) got += (got.empty() ? "" : " ") + g;
  return {ok && rel_ok, "donkey {" + got + "}, relative clause " + (rel_ok ? "one Mult -> N" : "mismatch")};
}

// 7
ProofTree replace_at(const ProofTree& t, const std::vector<int>& path, std::size_t depth,
                     const std::function<ProofTree(const ProofTree&)>& fn) {
  if (depth == path.size()) return fn(t);
  std::vector<ProofTree> prem = t.premises();
  const auto i = static_cast<std::size_t>(path[depth]);
  prem[i] = replace_at(prem[i], path, depth + 1, fn);
  return ProofTree(t.rule(), t.conclusion(), prem, t.data());
}

const ProofTree& node_at(const ProofTree& t, const std::vector<int>& path) {
  const ProofTree* n = &t;
  for (int i : path) n = &n->premises()[static_cast<std::size_t>(i)];
  return *n;
}

std::string path_name(const std::vector<int>& path) {
  std::string s = "root";
  for (int i : path) s += "." + std::to_string(i);
  return s;
}

void collect(const ProofTree& t, std::vector<int>& path, std::vector<std::vector<int>>& out) {
  out.push_back(path);
  for (int i = 0; i < static_cast<int>(t.premises().size()); ++i) {
    path.push_back(i);
    collect(t.premises()[static_cast<std::size_t>(i)], path, out);
    path.pop_back();
  }
}

struct Mutant {
  std::string name;
  ProofTree tree;
  CheckFailure expected;
  std::string where;
};

ProofTree with_data(const ProofTree& t, RuleData d) { return ProofTree(t.rule(), t.conclusion(), t.premises(), d); }

std::vector<Mutant> mutants(const std::vector<ProofTree>& sources) {
  std::vector<Mutant> out;
  for (std::size_t s = 0; s < sources.size(); ++s) {
    const ProofTree& src = sources[s];
    std::vector<std::vector<int>> paths;
    std::vector<int> scratch;
    collect(src, scratch, paths);
    const std::string tag = "proof " + std::to_string(s + 1) + " ";
    auto add = [&](const std::string& what, const std::vector<int>& p, CheckFailure f,
                   const std::function<ProofTree(const ProofTree&)>& fn) {
      out.push_back({tag + what + " at " + path_name(p), replace_at(src, p, 0, fn), f, path_name(p)});
    };
    bool axiom_done = false, bang_done = false, split_done = false, perm_done = false;
    for (const auto& p : paths) {
      const ProofTree& n = node_at(src, p);
      const RuleData d = n.data();
      // Broken axiom: a derived sequent passed off as an axiom leaf.
      if (!axiom_done && n.rule() != Rule::Axiom && n.conclusion().antecedent.size() > 1) {
        add("truncated to axiom", p, CheckFailure::BadAxiom,
            [](const ProofTree& x) { return ProofTree(Rule::Axiom, x.conclusion()); });
        axiom_done = true;
      }
      // Over-budget and zero-copy !L.
      if (!bang_done && n.rule() == Rule::BangL) {
        RuleData over = d, none = d;
        over.copies = 3;
        none.copies = 0;
        add("!L with 3 copies", p, CheckFailure::CopyBound, [over](const ProofTree& x) { return with_data(x, over); });
        add("!L with 0 copies", p, CheckFailure::CopyBound, [none](const ProofTree& x) { return with_data(x, none); });
        bang_done = true;
      }
      // Misplaced splits of an implication left rule.
      if (!split_done && (n.rule() == Rule::UnderL || n.rule() == Rule::OverL)) {
        const int len = static_cast<int>(n.conclusion().antecedent.size());
        RuleData empty = d, past = d;
        empty.sigma = 0;
        past.gamma = len;
        add("split with empty Sigma", p, CheckFailure::BadSplit, [empty](const ProofTree& x) { return with_data(x, empty); });
        add("split past the end", p, CheckFailure::BadSplit, [past](const ProofTree& x) { return with_data(x, past); });
        if (n.rule() == Rule::OverL && d.sigma >= 2) {
          // Same principal, one formula fewer in Sigma: the argument premise no longer matches.
          RuleData shorter = d;
          shorter.sigma -= 1;
          add("Sigma cut short", p, CheckFailure::PremiseMismatch,
              [shorter](const ProofTree& x) { return with_data(x, shorter); });
        }
        split_done = true;
      }
      if (!perm_done && n.rule() == Rule::Perm) {
        RuleData same = d, off = d;
        same.to = same.from;
        off.to = static_cast<int>(n.conclusion().antecedent.size());
        add("Perm onto itself", p, CheckFailure::BadPermutation, [same](const ProofTree& x) { return with_data(x, same); });
        add("Perm out of range", p, CheckFailure::BadPermutation, [off](const ProofTree& x) { return with_data(x, off); });
        perm_done = true;
      }
    }
  }
  return out;
}

Verdict checker_independence() {
  std::vector<std::pair<std::string, std::string>> corpus = {
      {"dogs eat snacks", ""}, {"every dog eats snacks", ""}, {"John sleeps. He snores.", ""},
      {kDonkey, ""}, {"dogs who eat snacks", "np"}, {"some dog eats snacks", ""}};
  std::size_t total = 0, valid = 0;
  std::vector<ProofTree> sources;
  for (const auto& [s, goal] : corpus) {
    std::optional<Formula> g;
    if (!goal.empty()) g = parse_formula(goal);
    const Analysis a = analyze(s, bundled_lexicon(), g);
    for (const auto* p : a.proofs()) {
      ++total;
      valid += static_cast<bool>(check_proof(*p, 2));
    }
    if (a.provable()) sources.push_back(*a.proofs().front());
  }
  for (const char* seq : {kTransitiveSequent, kDiscourseSequent, kDonkeySequent}) {
    for (const auto& p : search(seq).result.proofs) {
      ++total;
      valid += static_cast<bool>(check_proof(p, 2));
    }
  }

  std::vector<Mutant> ms = mutants(sources);
  // A cut glued over a valid proof, and an axiom on mismatched formulas.
  const ProofTree& base = sources.front();
  const ProofTree id(Rule::Axiom, parse_sequent("s -> s"));
  ms.push_back({"cut over proof 1", ProofTree(Rule::Cut, base.conclusion(), {base, id}), CheckFailure::CutRule, "root"});
  ms.push_back({"axiom np -> s", ProofTree(Rule::Axiom, parse_sequent("np -> s")), CheckFailure::BadAxiom, "root"});

  std::size_t rejected = 0;
  std::string first_miss;
  for (const auto& m : ms) {
    const CheckResult r = check_proof(m.tree, 2);
    const bool right = !r.ok && r.failure == m.expected && r.path == m.where;
    rejected += right;
    if (!right && first_miss.empty())
      first_miss = m.name + " gave " + (r.ok ? "accept" : to_string(r.failure) + " at " + r.path);
  }
  std::ostringstream d;
  d << valid << "/" << total << " search outputs valid, " << rejected << "/" << ms.size()
    << " mutants rejected with the expected diagnostic";
  if (!first_miss.empty()) d << " (first miss: " << first_miss << ")";
  return {total > 0 && valid == total && ms.size() >= 20 && rejected == ms.size(), d.str()};
}

}  // namespace

int main() {
  report(1, "golden derivations", golden_derivations);
  report(2, "worked-example truth", worked_example);
  report(3, "donkey oracle sweep", donkey_sweep);
  report(4, "rel/vector equivalence", rel_vec_equivalence);
  report(5, "algebraic laws", algebraic_laws);
  report(6, "diagram structure", diagram_structure);
  report(7, "proof checker", checker_independence);
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures;
}
