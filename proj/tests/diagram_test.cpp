#include <gtest/gtest.h>

#include "support.hpp"
#include "tlg/error.hpp"

using namespace tlg;
using namespace tlg::testing;

namespace {

const WireType N = WireType::n();
const WireType S = WireType::s();

struct Compiled {
  Analysis analysis;
  Diagram raw;
};

Compiled compile_first(const std::string& sentence) {
  Compiled c{analyze(sentence, bundled_lexicon(), std::nullopt), {}};
  c.raw = proof_to_diagram(*c.analysis.proofs().at(0), c.analysis.words, bundled_lexicon());
  return c;
}

std::multiset<std::string> labels(std::initializer_list<std::pair<const char*, int>> counts) {
  std::multiset<std::string> out;
  for (auto [name, n] : counts)
    for (int i = 0; i < n; ++i) out.insert(name);
  return out;
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

// every dog eats snacks, drawn by hand: the determiner box takes ⟦dog⟧ and
// its noun phrase is cupped with the verb's subject.
Diagram every_dog_eats_snacks_by_hand() {
  Diagram d;
  const int dog = d.add(Generator::state("dog", 1, parse_formula("n")));
  const int every = d.add(Generator::det_box("every", 0, parse_formula("np/n")));
  const int eats = d.add(Generator::state("eats", 2, parse_formula("np\\s/np")));
  const int snacks = d.add(Generator::state("snacks", 3, parse_formula("np")));
  const int subj = d.add(Generator::cup(N));
  const int obj = d.add(Generator::cup(N));
  d.connect({dog, 0}, {every, 0});
  d.connect({every, 0}, {subj, 0});
  d.connect({eats, 0}, {subj, 1});
  d.connect({eats, 2}, {obj, 0});
  d.connect({snacks, 0}, {obj, 1});
  d.connect({eats, 1}, {Port::kBoundary, 0});
  d.outputs = {S};
  return d;
}

}  // namespace

TEST(Compile, TransitiveSentence) {
  const Diagram d = compile_first("dogs eat snacks").raw;
  EXPECT_TRUE(typecheck(d)) << typecheck(d).message;
  EXPECT_EQ(generator_multiset(d), labels({{"State", 3}, {"Cup", 2}}));
  EXPECT_EQ(d.outputs, std::vector<WireType>{S});
}

TEST(Compile, TransitiveSentenceDot) {
  const std::string dot = diagram_to_dot(compile_first("dogs eat snacks").raw);
  EXPECT_EQ(count(dot, "shape=invtrapezium"), 3u);
  EXPECT_EQ(count(dot, "label=\"cup\""), 2u);
  for (const char* w : {"dogs", "eat", "snacks"}) EXPECT_NE(dot.find(std::string("label=\"") + w + "\""), std::string::npos);
}

TEST(Compile, PronounDiscourseProjectsAndSwaps) {
  const Diagram d = compile_first("John sleeps. He snores.").raw;
  EXPECT_TRUE(typecheck(d));
  const auto g = generator_multiset(d, false);
  EXPECT_EQ(g.count("Proj(2)"), 1u);
  EXPECT_EQ(g.count("Swap"), 1u);
  EXPECT_EQ(d.outputs, (std::vector<WireType>{S, S}));
}

TEST(Compile, EveryProofOfGoldenSentencesTypechecks) {
  for (const char* s : {"dogs eat snacks", "every dog eats snacks", "John sleeps. He snores.",
                        "every farmer who owns a donkey beats it"}) {
    auto a = analyze(s, bundled_lexicon(), std::nullopt);
    ASSERT_TRUE(a.provable()) << s;
    for (const auto* p : a.proofs()) {
      const Diagram raw = proof_to_diagram(*p, a.words, bundled_lexicon());
      ASSERT_TRUE(typecheck(raw)) << s << ": " << typecheck(raw).message;
      const Diagram sub = substitute_wirings(raw, bundled_lexicon());
      ASSERT_TRUE(typecheck(sub)) << s << ": " << typecheck(sub).message;
      EXPECT_EQ(sub.inputs, raw.inputs);
      EXPECT_EQ(sub.outputs, raw.outputs);
      ASSERT_TRUE(typecheck(simplify(sub))) << s;
    }
  }
}

TEST(Compile, RejectsCut) {
  const Sequent seq = parse_sequent("np -> np");
  const ProofTree ax(Rule::Axiom, seq);
  const ProofTree cut(Rule::Cut, seq, {ax, ax});
  EXPECT_THROW(proof_to_diagram(cut, {"dogs"}, bundled_lexicon()), DiagramError);
}

TEST(Compile, RejectsLexiconMismatch) {
  const ProofTree ax(Rule::Axiom, parse_sequent("n -> n"));
  EXPECT_THROW(proof_to_diagram(ax, {"dogs"}, bundled_lexicon()), DiagramError);
  EXPECT_THROW(proof_to_diagram(ax, {"dog", "dog"}, bundled_lexicon()), DiagramError);
  EXPECT_NO_THROW(proof_to_diagram(ax, {"dog"}, bundled_lexicon()));
}

TEST(Wirings, DonkeyGeneratorMultiset) {
  const auto ds = diagrams_of("every farmer who owns a donkey beats it");
  ASSERT_EQ(ds.size(), 1u);
  EXPECT_EQ(generator_multiset(ds[0], false), labels({{"Mult", 1}, {"Proj(2)", 1}, {"Swap", 1}, {"Cup", 3}}));
}

TEST(Wirings, RelativeClauseSimplifiesToOneMult) {
  const auto ds = diagrams_of("dogs who eat snacks", "np");
  ASSERT_EQ(ds.size(), 1u);
  EXPECT_EQ(generator_multiset(ds[0], false).count("Mult"), 1u);
  EXPECT_EQ(ds[0].outputs, std::vector<WireType>{N});
  EXPECT_EQ(count(diagram_to_dot(ds[0]), "label=\"mult\""), 1u);
}

TEST(Wirings, JohnFansOutToBothVerbs) {
  const auto ds = diagrams_of("John sleeps. He snores.");
  ASSERT_FALSE(ds.empty());
  const Diagram& d = ds[0];
  EXPECT_EQ(generator_multiset(d, false), labels({{"Proj(2)", 1}, {"Swap", 1}, {"Cup", 2}}));
  // Both copies from the projector end in cups with the verbs' subject strings.
  int proj = -1;
  for (int i = 0; i < static_cast<int>(d.nodes.size()); ++i)
    if (d.nodes[static_cast<std::size_t>(i)].kind == GenKind::Proj) proj = i;
  ASSERT_GE(proj, 0);
  const Diagram open = dissolve_swaps(d);
  std::set<std::string> verbs;
  for (const auto& e : open.edges) {
    if (e.src.node < 0 || open.nodes[static_cast<std::size_t>(e.src.node)].kind != GenKind::Proj) continue;
    const int cup = e.dst.node;
    ASSERT_EQ(open.nodes[static_cast<std::size_t>(cup)].kind, GenKind::Cup);
    for (const auto& f : open.edges)
      if (f.dst.node == cup && f.src.node != e.src.node) verbs.insert(open.nodes[static_cast<std::size_t>(f.src.node)].word);
  }
  EXPECT_EQ(verbs, (std::set<std::string>{"sleeps", "snores"}));
}

TEST(Wirings, UntaggedDiagramIsUnchanged) {
  const Diagram d = compile_first("dogs eat snacks").raw;
  EXPECT_TRUE(same_diagram(substitute_wirings(d, bundled_lexicon()), d));
}

TEST(Wirings, TagShapeMismatchIsAnError) {
  Lexicon lex;
  lex.add("it", "np");
  lex.set_wiring("it", WiringTag::PronounCap);
  Diagram d;
  const int s = d.add(Generator::state("it", 0, parse_formula("np")));
  const int c = d.add(Generator::counit());
  d.connect({s, 0}, {c, 0});
  EXPECT_THROW(substitute_wirings(d, lex), DiagramError);
}

TEST(Typecheck, HandBuiltEveryDogDiagram) {
  const Diagram d = every_dog_eats_snacks_by_hand();
  EXPECT_TRUE(typecheck(d)) << typecheck(d).message;
  const Diagram piped = diagrams_of("every dog eats snacks").at(0);
  std::mt19937 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const Model m = random_world(rng, 1 + trial % 3).model();
    EXPECT_EQ(sentence_truth(d, m, 2), sentence_truth(piped, m, 2));
  }
}

TEST(Typecheck, CupOfMismatchedStrings) {
  Diagram d;
  const int n = d.add(Generator::state("dog", 0, parse_formula("n")));
  const int v = d.add(Generator::state("sleeps", 1, parse_formula("np\\s")));
  const int c = d.add(Generator::cup(N));
  d.connect({n, 0}, {c, 0});
  d.connect({v, 1}, {c, 1});
  d.connect({v, 0}, {Port::kBoundary, 0});
  d.outputs = {N};
  const TypeCheck tc = typecheck(d);
  EXPECT_FALSE(tc);
  EXPECT_EQ(tc.edge, 1);
}

TEST(Typecheck, StructuralFailures) {
  {  // unconnected input
    Diagram d;
    d.add(Generator::counit());
    EXPECT_FALSE(typecheck(d));
  }
  {  // an N output left open
    Diagram d;
    d.add(Generator::unit());
    EXPECT_FALSE(typecheck(d));
  }
  {  // output port used twice
    Diagram d;
    const int u = d.add(Generator::unit());
    const int a = d.add(Generator::counit());
    const int b = d.add(Generator::counit());
    d.connect({u, 0}, {a, 0});
    d.connect({u, 0}, {b, 0});
    EXPECT_FALSE(typecheck(d));
  }
  {  // cycle
    Diagram d;
    d.inputs = {N};
    const int m1 = d.add(Generator::mult());
    const int c = d.add(Generator::comult());
    d.connect({Port::kBoundary, 0}, {m1, 0});
    d.connect({c, 0}, {m1, 1});
    d.connect({m1, 0}, {c, 0});
    d.connect({c, 1}, {Port::kBoundary, 0});
    d.outputs = {N};
    EXPECT_FALSE(typecheck(d));
  }
  {  // generator with the wrong port types
    Diagram d;
    Generator g = Generator::mult();
    g.outputs = {S};
    d.add(g);
    EXPECT_FALSE(typecheck(d));
  }
}

TEST(Json, EmptyDiagram) {
  const auto j = diagram_to_json(Diagram{});
  EXPECT_EQ(j.at("schema_version"), 1);
  EXPECT_TRUE(j.at("nodes").empty());
  EXPECT_TRUE(j.at("edges").empty());
}

TEST(Json, RoundTrips) {
  for (const char* s : {"dogs eat snacks", "John sleeps. He snores.", "every farmer who owns a donkey beats it"}) {
    const Compiled c = compile_first(s);
    for (const Diagram& d : {c.raw, meaning_diagram(*c.analysis.proofs().at(0), c.analysis.words, bundled_lexicon())}) {
      const auto j = diagram_to_json(d);
      const Diagram back = diagram_from_json(nlohmann::json::parse(j.dump()));
      EXPECT_TRUE(same_diagram(back, d)) << s;
      EXPECT_EQ(diagram_to_json(back).dump(), j.dump()) << s;
    }
  }
}

TEST(Json, OutputIsDeterministic) {
  const std::string a = diagram_to_json(diagrams_of("every farmer who owns a donkey beats it").at(0)).dump(2);
  const std::string b = diagram_to_json(diagrams_of("every farmer who owns a donkey beats it").at(0)).dump(2);
  EXPECT_EQ(a, b);
  EXPECT_EQ(diagram_to_dot(diagrams_of("dogs eat snacks").at(0)), diagram_to_dot(diagrams_of("dogs eat snacks").at(0)));
}

TEST(Json, RejectsMalformedInput) {
  using nlohmann::json;
  EXPECT_THROW(diagram_from_json(json::parse(R"({"schema_version": 2, "inputs": [], "outputs": [], "nodes": [], "edges": []})")),
               DiagramError);
  EXPECT_THROW(diagram_from_json(json::parse(R"({"schema_version": 1})")), DiagramError);
  EXPECT_THROW(diagram_from_json(json::parse(R"([1])")), DiagramError);
  json j = diagram_to_json(compile_first("dogs eat snacks").raw);
  j["edges"][0]["type"] = "F(N)";
  EXPECT_THROW(diagram_from_json(j), DiagramError);
  j = diagram_to_json(compile_first("dogs eat snacks").raw);
  j["nodes"][0]["kind"] = "Blob";
  EXPECT_THROW(diagram_from_json(j), DiagramError);
}

TEST(Swaps, PermVariantsAgreeUpToSwaps) {
  // Insert a redundant back-and-forth relocation of the pronoun's antecedent
  // copy below the root of the discourse proof.
  auto a = analyze("John sleeps. He snores.", bundled_lexicon(), std::nullopt);
  const ProofTree& p = *a.proofs().at(0);
  ASSERT_EQ(p.premises().at(0).rule(), Rule::Perm);
  const ProofTree& perm = p.premises()[0];
  const RuleData moved = perm.data();
  RuleData back;
  back.from = moved.to;
  back.to = moved.from;
  const ProofTree wobble(Rule::Perm, perm.conclusion(),
                         {ProofTree(Rule::Perm, perm.premises()[0].conclusion(), {perm}, back)}, moved);
  const ProofTree variant(p.rule(), p.conclusion(), {wobble}, p.data());
  ASSERT_TRUE(check_proof(variant)) << check_proof(variant).message;
  EXPECT_EQ(proof_key(variant), proof_key(p));

  const Diagram d1 = proof_to_diagram(p, a.words, bundled_lexicon());
  const Diagram d2 = proof_to_diagram(variant, a.words, bundled_lexicon());
  EXPECT_FALSE(same_diagram(d1, d2));
  EXPECT_EQ(generator_multiset(d2).count("Swap"), 3u);
  EXPECT_TRUE(same_up_to_swaps(d1, d2));
  EXPECT_TRUE(same_diagram(normalize_swaps(d1), normalize_swaps(d2)));
}

TEST(Layers, FollowLongestPaths) {
  const Diagram d = compile_first("dogs eat snacks").raw;
  const auto ls = layers(d);
  ASSERT_EQ(ls.size(), 2u);
  EXPECT_EQ(ls[0].size(), 3u);
  EXPECT_EQ(ls[1].size(), 2u);
  EXPECT_NE(diagram_to_text(d).find("layer 1"), std::string::npos);
}
