#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tlg/formula.hpp"

namespace tlg {

/// How a word's box is replaced when diagrams are simplified.
enum class WiringTag { Plain, RelproSubject, PronounCap, DeterminerBox };

std::string to_string(WiringTag tag);
WiringTag parse_wiring_tag(std::string_view text);

class Lexicon {
 public:
  Lexicon() : atoms_(default_atoms()) {}

  /// Loads `{"atoms": [...], "words": {w: [formulas]}, "wirings": {w: tag}}`.
  static Lexicon from_json_text(std::string_view text);
  static Lexicon from_file(const std::string& path);

  /// Adds a formula for `word` (words are stored lowercased).
  void add(const std::string& word, const Formula& f);
  void add(const std::string& word, std::string_view formula_text);
  void set_wiring(const std::string& word, WiringTag tag);

  /// Checks each tagged word has a formula of the tag's expected shape.
  void validate() const;

  bool contains(const std::string& word) const { return entries_.count(word) > 0; }
  const std::vector<Formula>& formulas(const std::string& word) const;
  WiringTag wiring(const std::string& word) const;
  const std::set<std::string>& atoms() const { return atoms_; }
  const std::map<std::string, std::vector<Formula>>& entries() const { return entries_; }

 private:
  std::set<std::string> atoms_;
  std::map<std::string, std::vector<Formula>> entries_;
  std::map<std::string, WiringTag> wirings_;
};

/// Whether `f` fits the shape required by `tag` (always true for Plain).
bool formula_fits_wiring(WiringTag tag, const Formula& f);

/// Lowercases, strips punctuation and splits on whitespace.
std::vector<std::string> tokenize(std::string_view sentence);

/// Number of sentences in a discourse, counting terminal periods; at least 1.
std::size_t count_sentences(std::string_view text);

/// s, s.s, s.s.s, ... for a discourse of `n` sentences.
Formula default_goal(std::size_t n);

/// One sequent per combination of lexical choices, antecedents in word order.
std::vector<Sequent> sentence_to_sequents(const std::vector<std::string>& words, const Lexicon& lexicon,
                                          const Formula& goal);

/// The per-word formula choices behind each sequent of sentence_to_sequents.
std::vector<std::vector<Formula>> lexical_assignments(const std::vector<std::string>& words,
                                                      const Lexicon& lexicon);

}  // namespace tlg
