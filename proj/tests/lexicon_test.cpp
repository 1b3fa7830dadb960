#include <gtest/gtest.h>

#include "support.hpp"
#include "tlg/error.hpp"

using namespace tlg;
using namespace tlg::testing;

namespace {

std::vector<std::string> sequent_strings(const std::string& sentence, const std::string& goal, const Lexicon& lex) {
  std::vector<std::string> out;
  for (const auto& s : sentence_to_sequents(tokenize(sentence), lex, parse_formula(goal))) out.push_back(format_sequent(s));
  return out;
}

}  // namespace

TEST(Tokenize, LowercasesAndStripsPunctuation) {
  EXPECT_EQ(tokenize("John sleeps. He snores."), (std::vector<std::string>{"john", "sleeps", "he", "snores"}));
  EXPECT_EQ(tokenize("  Dogs   eat snacks!  "), (std::vector<std::string>{"dogs", "eat", "snacks"}));
  EXPECT_TRUE(tokenize("").empty());
}

TEST(Tokenize, CountsSentences) {
  EXPECT_EQ(count_sentences("dogs eat snacks"), 1u);
  EXPECT_EQ(count_sentences("John sleeps. He snores."), 2u);
  EXPECT_EQ(count_sentences("John sleeps. He snores"), 2u);
  EXPECT_EQ(format_formula(default_goal(1)), "s");
  EXPECT_EQ(format_formula(default_goal(3)), "s.s.s");
}

TEST(Sequents, FromBundledLexicon) {
  const Lexicon& lex = bundled_lexicon();
  EXPECT_EQ(sequent_strings("dogs eat snacks", "s", lex), std::vector<std::string>{"np, np\\s/np, np -> s"});
  EXPECT_EQ(sequent_strings("john sleeps he snores", "s.s", lex),
            std::vector<std::string>{"!@np, np\\s, @np\\np, np\\s -> s.s"});
  EXPECT_EQ(sequent_strings("every farmer who owns a donkey beats it", "s", lex),
            std::vector<std::string>{"np/n, n, np\\np/(np\\s), np\\s/np, !@(!@np/n), n, np\\s/np, @np\\np -> s"});
}

TEST(Sequents, AmbiguityMultiplies) {
  Lexicon lex = Lexicon::from_json_text(R"({"words": {"fish": ["n", "np", "np\\s"], "swim": ["np\\s", "s"],
      "fast": ["s\\s"]}})");
  EXPECT_EQ(sequent_strings("fish swim", "s", lex).size(), 6u);
  EXPECT_EQ(sequent_strings("fish swim fast", "s", lex).size(), 6u);
  EXPECT_EQ(lexical_assignments(tokenize("fish swim"), lex).size(), 6u);
  EXPECT_EQ(sequent_strings("fish swim", "s", lex).front(), "n, np\\s -> s");
}

TEST(Sequents, UnknownWordIsNamed) {
  try {
    sentence_to_sequents({"dogs", "bark"}, bundled_lexicon(), parse_formula("s"));
    FAIL() << "expected an error";
  } catch (const UnknownWordError& e) {
    EXPECT_EQ(e.word(), "bark");
  }
}

TEST(LexiconFile, BundledLexiconIsValid) {
  const Lexicon& lex = bundled_lexicon();
  EXPECT_NO_THROW(lex.validate());
  EXPECT_EQ(lex.wiring("who"), WiringTag::RelproSubject);
  EXPECT_EQ(lex.wiring("it"), WiringTag::PronounCap);
  EXPECT_EQ(lex.wiring("a"), WiringTag::DeterminerBox);
  EXPECT_EQ(lex.wiring("dogs"), WiringTag::Plain);
  EXPECT_EQ(format_formula(lex.formulas("a").front()), "!@(!@np/n)");
}

TEST(LexiconFile, RejectsMalformedInput) {
  EXPECT_THROW(Lexicon::from_json_text("[1, 2"), LexiconError);
  EXPECT_THROW(Lexicon::from_json_text("[]"), LexiconError);
  EXPECT_THROW(Lexicon::from_json_text(R"({"words": {"x": []}})"), LexiconError);
  EXPECT_THROW(Lexicon::from_json_text(R"({"words": {"x": ["np\\"]}})"), LexiconError);
  EXPECT_THROW(Lexicon::from_json_text(R"({"words": {"x": ["vp"]}})"), LexiconError);
  EXPECT_THROW(Lexicon::from_json_text(R"({"words": {"x": ["np"]}, "wirings": {"x": "sideways"}})"), LexiconError);
  EXPECT_THROW(Lexicon::from_json_text(R"({"words": {"x": ["np"]}, "wirings": {"x": "pronoun-cap"}})"), LexiconError);
  EXPECT_THROW(Lexicon::from_file("/nonexistent/lexicon.json"), LexiconError);
}

TEST(LexiconFile, CustomAtoms) {
  Lexicon lex = Lexicon::from_json_text(R"({"atoms": ["n", "np", "s", "pp"], "words": {"on": ["pp/np"]}})");
  EXPECT_EQ(format_formula(lex.formulas("on").front()), "pp/np");
}

TEST(WiringShapes, MatchExpectedTypes) {
  EXPECT_TRUE(formula_fits_wiring(WiringTag::RelproSubject, parse_formula("(np\\np)/(np\\s)")));
  EXPECT_FALSE(formula_fits_wiring(WiringTag::RelproSubject, parse_formula("(np\\np)/(s/np)")));
  EXPECT_TRUE(formula_fits_wiring(WiringTag::PronounCap, parse_formula("@np\\np")));
  EXPECT_TRUE(formula_fits_wiring(WiringTag::DeterminerBox, parse_formula("np/n")));
  EXPECT_TRUE(formula_fits_wiring(WiringTag::DeterminerBox, parse_formula("!@(!@np/n)")));
  EXPECT_FALSE(formula_fits_wiring(WiringTag::DeterminerBox, parse_formula("n\\np")));
}
