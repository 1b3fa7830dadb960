#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tlg/diagram.hpp"
#include "tlg/prover.hpp"
#include "tlg/semantics.hpp"

namespace tlg {

/// One lexical assignment of a sentence and what the prover made of it.
struct Reading {
  Sequent sequent;
  SearchResult search;
};

struct Analysis {
  std::vector<std::string> words;
  Formula goal = Formula::atom("s");
  std::vector<Reading> readings;

  bool provable() const;
  /// Every proof across readings, in reading order.
  std::vector<const ProofTree*> proofs() const;
};

/// Tokenizes `sentence` and searches every lexical assignment against
/// `goal`, or against the s.s... chain for its sentence count when absent.
Analysis analyze(const std::string& sentence, const Lexicon& lex, const std::optional<Formula>& goal,
                 const SearchConfig& cfg = {});

/// Compiled diagram with wiring boxes substituted and wiring simplified.
Diagram meaning_diagram(const ProofTree& proof, const std::vector<std::string>& words, const Lexicon& lex);

/// Diagrams of all proofs, with duplicates (same canonical form) removed.
std::vector<Diagram> meaning_diagrams(const Analysis& a, const Lexicon& lex);

}  // namespace tlg
