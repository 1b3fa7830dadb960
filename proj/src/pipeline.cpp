#include "tlg/pipeline.hpp"

#include <set>

namespace tlg {

bool Analysis::provable() const {
  for (const auto& r : readings)
    if (!r.search.proofs.empty()) return true;
  return false;
}

std::vector<const ProofTree*> Analysis::proofs() const {
  std::vector<const ProofTree*> out;
  for (const auto& r : readings)
    for (const auto& p : r.search.proofs) out.push_back(&p);
  return out;
}

Analysis analyze(const std::string& sentence, const Lexicon& lex, const std::optional<Formula>& goal,
                 const SearchConfig& cfg) {
  Analysis a;
  a.words = tokenize(sentence);
  a.goal = goal ? *goal : default_goal(count_sentences(sentence));
  for (auto& seq : sentence_to_sequents(a.words, lex, a.goal)) {
    SearchResult r = prove(seq, cfg);
    a.readings.push_back({std::move(seq), std::move(r)});
  }
  return a;
}

Diagram meaning_diagram(const ProofTree& proof, const std::vector<std::string>& words, const Lexicon& lex) {
  return canonicalize(simplify(substitute_wirings(proof_to_diagram(proof, words, lex), lex)));
}

std::vector<Diagram> meaning_diagrams(const Analysis& a, const Lexicon& lex) {
  std::vector<Diagram> out;
  std::set<std::string> seen;
  for (const auto* p : a.proofs()) {
    Diagram d = meaning_diagram(*p, a.words, lex);
    if (seen.insert(diagram_to_json(d).dump()).second) out.push_back(std::move(d));
  }
  return out;
}

}  // namespace tlg
