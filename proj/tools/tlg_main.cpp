// tlg: prove, draw and evaluate sentences of the type-logical grammar.
//
//   tlg prove   [options] "SENTENCE"
//   tlg diagram [options] "SENTENCE"
//   tlg eval    [options] --model PATH "SENTENCE"
//
// Exit status: 0 proved / true, 1 not proved / false, 2 error.

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "tlg/error.hpp"
#include "tlg/pipeline.hpp"

#ifndef TLG_DATA_DIR
#define TLG_DATA_DIR "data"
#endif

namespace {

using namespace tlg;

constexpr int kOk = 0;
constexpr int kNo = 1;
constexpr int kError = 2;

struct RunConfig {
  std::string command;
  std::string sentence;
  std::string lexicon = std::string(TLG_DATA_DIR) + "/lexicon.json";
  std::string model;
  std::string goal;
  int k = 2;
  int depth = 64;
  std::string backend = "both";
  std::string export_dot;
  std::string export_json;
  bool as_float = false;
  bool trace = false;
};

// out.dot -> out.2.dot for the second of several artifacts.
std::string indexed_path(const std::string& path, std::size_t i, std::size_t total) {
  if (total <= 1) return path;
  const auto slash = path.find_last_of('/');
  const auto dot = path.find_last_of('.');
  const std::string tag = "." + std::to_string(i + 1);
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path + tag;
  return path.substr(0, dot) + tag + path.substr(dot);
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
  if (!out) throw Error("cannot write " + path);
}

Analysis run_search(const RunConfig& cfg, const Lexicon& lex) {
  std::optional<Formula> goal;
  if (!cfg.goal.empty()) goal = parse_formula(cfg.goal, lex.atoms());
  SearchConfig sc;
  sc.k = cfg.k;
  sc.depth_limit = cfg.depth;
  const auto start = std::chrono::steady_clock::now();
  Analysis a = analyze(cfg.sentence, lex, goal, sc);
  if (cfg.trace) {
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cerr << "search: " << a.readings.size() << " lexical assignment(s), " << a.proofs().size()
              << " proof(s) in " << std::fixed << std::setprecision(3) << secs << " s\n";
    std::cerr.unsetf(std::ios::floatfield);
  }
  return a;
}

const char* status_text(SearchStatus s) {
  switch (s) {
    case SearchStatus::Proved: return "proved";
    case SearchStatus::Unprovable: return "unprovable";
    case SearchStatus::DepthExhausted: return "not proved (depth limit reached)";
  }
  return "?";
}

int cmd_prove(const RunConfig& cfg, const Lexicon& lex) {
  Analysis a = run_search(cfg, lex);
  nlohmann::json exported = nlohmann::json::array();
  std::size_t index = 0;
  for (const auto& r : a.readings) {
    std::cout << "sequent: " << format_sequent(r.sequent) << "\n";
    std::cout << "status: " << status_text(r.search.status) << ", " << r.search.proofs.size() << " proof(s)\n";
    for (const auto& p : r.search.proofs) {
      std::cout << "\nproof " << ++index << ":\n" << proof_to_text(p);
      exported.push_back(proof_to_json(p));
    }
    std::cout << "\n";
  }
  if (!a.provable()) return kNo;
  if (!cfg.export_json.empty()) write_file(cfg.export_json, exported.dump(2) + "\n");
  return kOk;
}

int cmd_diagram(const RunConfig& cfg, const Lexicon& lex) {
  Analysis a = run_search(cfg, lex);
  if (!a.provable()) {
    std::cout << "no proof for: " << cfg.sentence << "\n";
    return kNo;
  }
  const auto diagrams = meaning_diagrams(a, lex);
  for (std::size_t i = 0; i < diagrams.size(); ++i) {
    const Diagram& d = diagrams[i];
    std::cout << "diagram " << i + 1 << ":\n" << diagram_to_text(d);
    std::cout << "generators:";
    for (const auto& g : generator_multiset(d, false)) std::cout << " " << g;
    std::cout << "\n\n";
    if (!cfg.export_dot.empty()) write_file(indexed_path(cfg.export_dot, i, diagrams.size()), diagram_to_dot(d));
    if (!cfg.export_json.empty())
      write_file(indexed_path(cfg.export_json, i, diagrams.size()), diagram_to_json(d).dump(2) + "\n");
  }
  return kOk;
}

std::string scalar_text(const Rational& r, bool as_float) {
  std::string out = format_rational(r);
  if (as_float) {
    std::ostringstream os;
    os << std::setprecision(17) << to_double(r);
    out += " (" + os.str() + ")";
  }
  return out;
}

int cmd_eval(const RunConfig& cfg, const Lexicon& lex) {
  if (cfg.model.empty()) throw Error("eval needs --model");
  const Model model = Model::from_file(cfg.model);
  Analysis a = run_search(cfg, lex);
  if (!a.provable()) {
    std::cerr << "error: ungrammatical: no proof of " << format_formula(a.goal) << " for \"" << cfg.sentence << "\"\n";
    return kError;
  }
  const bool rel = cfg.backend != "vec", vec = cfg.backend != "rel";
  bool any_true = false;
  std::map<std::string, std::string> cache;  // diagram json -> report
  std::size_t index = 0;
  for (const auto* p : a.proofs()) {
    const Diagram d = meaning_diagram(*p, a.words, lex);
    const std::string key = diagram_to_json(d).dump();
    auto it = cache.find(key);
    if (it == cache.end()) {
      std::string report;
      bool truth = false;
      if (rel) {
        truth = sentence_truth(d, model, cfg.k);
        report += std::string("rel: ") + (truth ? "true" : "false");
      }
      if (vec) {
        const Rational scalar = sentence_scalar(d, model, cfg.k);
        if (!rel) truth = scalar != 0;
        if (!report.empty()) report += ", ";
        report += "vec: " + scalar_text(scalar, cfg.as_float);
        if (rel) report += std::string(", equivalent: ") + (((scalar != 0) == truth) ? "yes" : "NO");
      }
      if (cfg.trace) std::cerr << "proof " << index + 1 << " diagram:\n" << diagram_to_text(d);
      it = cache.emplace(key, (truth ? "1" : "0") + report).first;
    }
    any_true = any_true || it->second.front() == '1';
    std::cout << "proof " << ++index << ": " << it->second.substr(1) << "\n";
  }
  std::cout << "any-true: " << (any_true ? "true" : "false") << "\n";
  return any_true ? kOk : kNo;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Type-logical grammar prover with relational and vector semantics"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("sentence", cfg.sentence, "Sentence or discourse")->required();
    sub->add_option("--lexicon", cfg.lexicon, "Lexicon JSON")->capture_default_str();
    sub->add_option("--model", cfg.model, "Model JSON");
    sub->add_option("--goal", cfg.goal, "Goal formula (default s, or s.s... per sentence)");
    sub->add_option("--k", cfg.k, "Copy bound")->capture_default_str()->check(CLI::Range(1, 16));
    sub->add_option("--depth", cfg.depth, "Search depth limit")->capture_default_str()->check(CLI::Range(1, 4096));
    sub->add_option("--backend", cfg.backend, "Evaluation backend")
        ->capture_default_str()
        ->check(CLI::IsMember({"rel", "vec", "both"}));
    sub->add_option("--export-dot", cfg.export_dot, "Write diagram DOT");
    sub->add_option("--export-json", cfg.export_json, "Write proof or diagram JSON");
    sub->add_flag("--float", cfg.as_float, "Also print scalars as decimals");
    sub->add_flag("--trace", cfg.trace, "Print search and diagram details to stderr");
    sub->callback([&cfg, sub] { cfg.command = sub->get_name(); });
  };
  add_common(app.add_subcommand("prove", "Search for proofs"));
  add_common(app.add_subcommand("diagram", "Build meaning diagrams"));
  add_common(app.add_subcommand("eval", "Evaluate the sentence in a model"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kError;
  }

  try {
    const Lexicon lex = Lexicon::from_file(cfg.lexicon);
    if (cfg.command == "prove") return cmd_prove(cfg, lex);
    if (cfg.command == "diagram") return cmd_diagram(cfg, lex);
    return cmd_eval(cfg, lex);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
}
