#include "tlg/lexicon.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tlg/error.hpp"

namespace tlg {

using nlohmann::json;

std::string to_string(WiringTag tag) {
  switch (tag) {
    case WiringTag::Plain:
      return "plain";
    case WiringTag::RelproSubject:
      return "relpro-subject";
    case WiringTag::PronounCap:
      return "pronoun-cap";
    case WiringTag::DeterminerBox:
      return "determiner-box";
  }
  return "plain";
}

WiringTag parse_wiring_tag(std::string_view text) {
  if (text == "plain") return WiringTag::Plain;
  if (text == "relpro-subject") return WiringTag::RelproSubject;
  if (text == "pronoun-cap") return WiringTag::PronounCap;
  if (text == "determiner-box") return WiringTag::DeterminerBox;
  throw LexiconError("unknown wiring tag '" + std::string(text) + "'");
}

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

bool is_atom(const Formula& f, const char* name) { return f.is_atom() && f.name() == name; }

}  // namespace

bool formula_fits_wiring(WiringTag tag, const Formula& f) {
  const Formula np = Formula::atom("np");
  switch (tag) {
    case WiringTag::Plain:
      return true;
    case WiringTag::RelproSubject:
      return f == Formula::over(Formula::under(np, np), Formula::under(np, Formula::atom("s")));
    case WiringTag::PronounCap:
      return f == Formula::under(Formula::nabla(np), np);
    case WiringTag::DeterminerBox: {
      const Formula& matrix = strip_modalities(f);
      if (matrix.connective() != Connective::Over || !is_atom(matrix.argument(), "n")) return false;
      return is_atom(strip_modalities(matrix.result()), "np");
    }
  }
  return false;
}

Lexicon Lexicon::from_json_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw LexiconError(std::string("lexicon is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw LexiconError("lexicon must be a JSON object");
  Lexicon lex;
  try {
    if (doc.contains("atoms")) {
      lex.atoms_.clear();
      for (const auto& a : doc.at("atoms")) lex.atoms_.insert(a.get<std::string>());
    }
    if (!doc.contains("words") || !doc.at("words").is_object()) throw LexiconError("lexicon needs a \"words\" object");
    for (const auto& [word, forms] : doc.at("words").items()) {
      if (!forms.is_array() || forms.empty())
        throw LexiconError("word '" + word + "' needs a non-empty list of formulas");
      for (const auto& f : forms) {
        try {
          lex.add(word, f.get<std::string>());
        } catch (const Error& e) {
          throw LexiconError("word '" + word + "': " + e.what());
        }
      }
    }
    if (doc.contains("wirings")) {
      for (const auto& [word, tag] : doc.at("wirings").items())
        lex.set_wiring(word, parse_wiring_tag(tag.get<std::string>()));
    }
  } catch (const json::exception& e) {
    throw LexiconError(std::string("malformed lexicon: ") + e.what());
  }
  lex.validate();
  return lex;
}

Lexicon Lexicon::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LexiconError("cannot read lexicon file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return from_json_text(buf.str());
}

void Lexicon::add(const std::string& word, const Formula& f) { entries_[lower(word)].push_back(f); }

void Lexicon::add(const std::string& word, std::string_view formula_text) {
  add(word, parse_formula(formula_text, atoms_));
}

void Lexicon::set_wiring(const std::string& word, WiringTag tag) { wirings_[lower(word)] = tag; }

void Lexicon::validate() const {
  for (const auto& [word, tag] : wirings_) {
    auto it = entries_.find(word);
    if (it == entries_.end()) throw LexiconError("wiring given for unknown word '" + word + "'");
    bool ok = std::any_of(it->second.begin(), it->second.end(),
                          [tag = tag](const Formula& f) { return formula_fits_wiring(tag, f); });
    if (!ok) throw LexiconError("word '" + word + "' has no formula matching wiring " + to_string(tag));
  }
}

const std::vector<Formula>& Lexicon::formulas(const std::string& word) const {
  auto it = entries_.find(word);
  if (it == entries_.end()) throw UnknownWordError(word);
  return it->second;
}

WiringTag Lexicon::wiring(const std::string& word) const {
  auto it = wirings_.find(word);
  return it == wirings_.end() ? WiringTag::Plain : it->second;
}

std::vector<std::string> tokenize(std::string_view sentence) {
  std::vector<std::string> words;
  std::string cur;
  for (char ch : sentence) {
    auto c = static_cast<unsigned char>(ch);
    if (std::isspace(c)) {
      if (!cur.empty()) words.push_back(std::move(cur));
      cur.clear();
    } else if (std::isalnum(c) || c == '\'' || c == '-' || c == '_') {
      cur += static_cast<char>(std::tolower(c));
    }
  }
  if (!cur.empty()) words.push_back(std::move(cur));
  return words;
}

std::size_t count_sentences(std::string_view text) {
  std::size_t n = 0;
  bool content = false;
  for (char ch : text) {
    auto c = static_cast<unsigned char>(ch);
    if (ch == '.' || ch == '!' || ch == '?') {
      if (content) ++n;
      content = false;
    } else if (std::isalnum(c)) {
      content = true;
    }
  }
  if (content) ++n;
  return std::max<std::size_t>(n, 1);
}

Formula default_goal(std::size_t n) {
  Formula goal = Formula::atom("s");
  for (std::size_t i = 1; i < n; ++i) goal = Formula::tensor(goal, Formula::atom("s"));
  return goal;
}

std::vector<std::vector<Formula>> lexical_assignments(const std::vector<std::string>& words,
                                                      const Lexicon& lexicon) {
  std::vector<std::vector<Formula>> out{{}};
  for (const auto& w : words) {
    const auto& choices = lexicon.formulas(w);
    std::vector<std::vector<Formula>> next;
    next.reserve(out.size() * choices.size());
    for (const auto& prefix : out)
      for (const auto& f : choices) {
        next.push_back(prefix);
        next.back().push_back(f);
      }
    out = std::move(next);
  }
  return out;
}

std::vector<Sequent> sentence_to_sequents(const std::vector<std::string>& words, const Lexicon& lexicon,
                                          const Formula& goal) {
  if (words.empty()) throw LexiconError("empty sentence");
  std::vector<Sequent> out;
  for (auto& assignment : lexical_assignments(words, lexicon)) out.push_back({std::move(assignment), goal});
  return out;
}

}  // namespace tlg
