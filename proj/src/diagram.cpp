#include "tlg/diagram.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <sstream>
#include <tuple>

#include "tlg/error.hpp"

namespace tlg {

using nlohmann::json;

namespace {

const char* const kKindNames[] = {"State", "DetBox", "Cup",    "Cap",     "Swap",     "Id",
                                  "Mult",  "Unit",   "Comult", "Counit", "FockLift", "Proj"};

}  // namespace

std::string to_string(GenKind k) { return kKindNames[static_cast<int>(k)]; }

GenKind parse_gen_kind(const std::string& name) {
  for (int i = 0; i < 12; ++i)
    if (name == kKindNames[i]) return static_cast<GenKind>(i);
  throw DiagramError("unknown generator kind '" + name + "'");
}

Generator Generator::state(std::string word, int position, const Formula& f) {
  Generator g;
  g.kind = GenKind::State;
  g.outputs = formula_wires(f);
  g.word = std::move(word);
  g.position = position;
  g.formula = format_formula(f);
  return g;
}

Generator Generator::det_box(std::string word, int position, const Formula& f) {
  const Formula& matrix = strip_modalities(f);
  if (matrix.connective() != Connective::Over)
    throw DiagramError("determiner '" + word + "' needs a type of the form X/n");
  Generator g;
  g.kind = GenKind::DetBox;
  g.inputs = formula_wires(matrix.argument());
  if (g.inputs != std::vector<WireType>{WireType::n()})
    throw DiagramError("determiner '" + word + "' must take a noun argument");
  g.outputs = formula_wires(matrix.result());
  g.word = std::move(word);
  g.position = position;
  g.formula = format_formula(f);
  return g;
}

Generator Generator::cup(const WireType& t) {
  Generator g;
  g.kind = GenKind::Cup;
  g.inputs = {t, t};
  return g;
}

Generator Generator::cap(const WireType& t) {
  Generator g;
  g.kind = GenKind::Cap;
  g.outputs = {t, t};
  return g;
}

Generator Generator::swap(const WireType& a, const WireType& b) {
  Generator g;
  g.kind = GenKind::Swap;
  g.inputs = {a, b};
  g.outputs = {b, a};
  return g;
}

Generator Generator::id(const WireType& t) {
  Generator g;
  g.kind = GenKind::Id;
  g.inputs = {t};
  g.outputs = {t};
  return g;
}

Generator Generator::mult() {
  Generator g;
  g.kind = GenKind::Mult;
  g.inputs = {WireType::n(), WireType::n()};
  g.outputs = {WireType::n()};
  return g;
}

Generator Generator::unit(const WireType& t) {
  Generator g;
  g.kind = GenKind::Unit;
  g.outputs = {t};
  return g;
}

Generator Generator::comult() {
  Generator g;
  g.kind = GenKind::Comult;
  g.inputs = {WireType::n()};
  g.outputs = {WireType::n(), WireType::n()};
  return g;
}

Generator Generator::counit(const WireType& t) {
  Generator g;
  g.kind = GenKind::Counit;
  g.inputs = {t};
  return g;
}

Generator Generator::fock_lift(std::shared_ptr<const Diagram> body) {
  Generator g;
  g.kind = GenKind::FockLift;
  if (!body->inputs.empty()) g.inputs = {WireType::fock(bundle(body->inputs))};
  g.outputs = {WireType::fock(bundle(body->outputs))};
  g.body = std::move(body);
  return g;
}

Generator Generator::proj(int n, const std::vector<WireType>& inner) {
  Generator g;
  g.kind = GenKind::Proj;
  g.copies = n;
  g.inputs = {WireType::fock(bundle(inner))};
  for (int i = 0; i < n; ++i) g.outputs.insert(g.outputs.end(), inner.begin(), inner.end());
  return g;
}

bool Generator::is_lexical() const {
  if (kind == GenKind::State || kind == GenKind::DetBox) return true;
  if (kind != GenKind::FockLift) return false;
  return std::all_of(body->nodes.begin(), body->nodes.end(), [](const Generator& g) { return g.is_lexical(); });
}

std::string Generator::label() const {
  if (kind == GenKind::Proj) return "Proj(" + std::to_string(copies) + ")";
  return to_string(kind);
}

int Diagram::add(Generator g) {
  nodes.push_back(std::move(g));
  return static_cast<int>(nodes.size()) - 1;
}

void Diagram::connect(Port src, Port dst) { edges.push_back({src, dst, source_type(src)}); }

const WireType& Diagram::source_type(Port p) const {
  if (p.node == Port::kBoundary) return inputs.at(static_cast<std::size_t>(p.index));
  return nodes.at(static_cast<std::size_t>(p.node)).outputs.at(static_cast<std::size_t>(p.index));
}

const WireType& Diagram::target_type(Port p) const {
  if (p.node == Port::kBoundary) return outputs.at(static_cast<std::size_t>(p.index));
  return nodes.at(static_cast<std::size_t>(p.node)).inputs.at(static_cast<std::size_t>(p.index));
}

namespace {

std::string port_text(Port p, bool source) {
  if (p.node == Port::kBoundary) return (source ? "input " : "output ") + std::to_string(p.index);
  return "node " + std::to_string(p.node) + (source ? " out " : " in ") + std::to_string(p.index);
}

std::optional<std::string> check_generator(const Generator& g) {
  using K = WireType::Kind;
  const auto n = WireType::n();
  switch (g.kind) {
    case GenKind::State:
      if (!g.inputs.empty()) return "State has inputs";
      break;
    case GenKind::DetBox:
      if (g.inputs != std::vector<WireType>{n} || g.outputs.empty()) return "DetBox must map N to its result";
      break;
    case GenKind::Cup:
      if (g.inputs.size() != 2 || g.inputs[0] != g.inputs[1] || !g.outputs.empty())
        return "Cup must join two wires of one type";
      break;
    case GenKind::Cap:
      if (g.outputs.size() != 2 || g.outputs[0] != g.outputs[1] || !g.inputs.empty())
        return "Cap must open two wires of one type";
      break;
    case GenKind::Swap:
      if (g.inputs.size() != 2 || g.outputs.size() != 2 || g.inputs[0] != g.outputs[1] ||
          g.inputs[1] != g.outputs[0])
        return "Swap must exchange its two wires";
      break;
    case GenKind::Id:
      if (g.inputs.size() != 1 || g.inputs != g.outputs) return "Id must have matching sides";
      break;
    case GenKind::Mult:
      if (g.inputs != std::vector<WireType>{n, n} || g.outputs != std::vector<WireType>{n})
        return "Mult is N*N -> N";
      break;
    case GenKind::Comult:
      if (g.inputs != std::vector<WireType>{n} || g.outputs != std::vector<WireType>{n, n})
        return "Comult is N -> N*N";
      break;
    case GenKind::Unit:
      if (!g.inputs.empty() || g.outputs.size() != 1 ||
          (g.outputs[0].kind() != K::N && g.outputs[0].kind() != K::S))
        return "Unit produces one N or S wire";
      break;
    case GenKind::Counit:
      if (g.inputs.size() != 1 || !g.outputs.empty() ||
          (g.inputs[0].kind() != K::N && g.inputs[0].kind() != K::S))
        return "Counit consumes one N or S wire";
      break;
    case GenKind::Proj: {
      if (g.copies < 1 || g.inputs.size() != 1 || g.inputs[0].kind() != K::Fock) return "Proj needs a Fock input";
      auto inner = unbundle(g.inputs[0].inner());
      if (g.outputs.size() != inner.size() * static_cast<std::size_t>(g.copies)) return "Proj output arity";
      for (std::size_t i = 0; i < g.outputs.size(); ++i)
        if (g.outputs[i] != inner[i % inner.size()]) return "Proj output types";
      break;
    }
    case GenKind::FockLift: {
      if (!g.body) return "FockLift without body";
      Generator expect = Generator::fock_lift(g.body);
      if (expect.inputs != g.inputs || expect.outputs != g.outputs) return "FockLift ports do not match its body";
      TypeCheck inner = typecheck(*g.body);
      if (!inner) return "FockLift body: " + inner.message;
      break;
    }
  }
  return std::nullopt;
}

}  // namespace

TypeCheck typecheck(const Diagram& d) {
  auto fail = [](std::string msg, int edge = -1) { return TypeCheck{false, std::move(msg), edge}; };
  const int nn = static_cast<int>(d.nodes.size());
  for (int i = 0; i < nn; ++i)
    if (auto err = check_generator(d.nodes[static_cast<std::size_t>(i)]))
      return fail("node " + std::to_string(i) + " (" + d.nodes[static_cast<std::size_t>(i)].label() + "): " + *err);

  auto valid_src = [&](Port p) {
    if (p.node == Port::kBoundary) return p.index >= 0 && p.index < static_cast<int>(d.inputs.size());
    return p.node >= 0 && p.node < nn && p.index >= 0 &&
           p.index < static_cast<int>(d.nodes[static_cast<std::size_t>(p.node)].outputs.size());
  };
  auto valid_dst = [&](Port p) {
    if (p.node == Port::kBoundary) return p.index >= 0 && p.index < static_cast<int>(d.outputs.size());
    return p.node >= 0 && p.node < nn && p.index >= 0 &&
           p.index < static_cast<int>(d.nodes[static_cast<std::size_t>(p.node)].inputs.size());
  };

  std::map<Port, int> src_use, dst_use;
  for (int e = 0; e < static_cast<int>(d.edges.size()); ++e) {
    const Edge& edge = d.edges[static_cast<std::size_t>(e)];
    if (!valid_src(edge.src)) return fail("edge " + std::to_string(e) + " leaves a missing port", e);
    if (!valid_dst(edge.dst)) return fail("edge " + std::to_string(e) + " enters a missing port", e);
    const WireType& st = d.source_type(edge.src);
    const WireType& tt = d.target_type(edge.dst);
    if (st != edge.type || tt != edge.type)
      return fail("edge " + std::to_string(e) + " from " + port_text(edge.src, true) + " (" + st.to_string() +
                      ") to " + port_text(edge.dst, false) + " (" + tt.to_string() + ") is typed " +
                      edge.type.to_string(),
                  e);
    if (++src_use[edge.src] > 1) return fail(port_text(edge.src, true) + " feeds more than one edge", e);
    if (++dst_use[edge.dst] > 1) return fail(port_text(edge.dst, false) + " has more than one incoming edge", e);
  }
  for (int i = 0; i < nn; ++i) {
    const Generator& g = d.nodes[static_cast<std::size_t>(i)];
    for (int p = 0; p < static_cast<int>(g.inputs.size()); ++p)
      if (!dst_use.count({i, p})) return fail(port_text({i, p}, false) + " is not connected");
    for (int p = 0; p < static_cast<int>(g.outputs.size()); ++p)
      if (!src_use.count({i, p}) && g.outputs[static_cast<std::size_t>(p)] != WireType::s())
        return fail(port_text({i, p}, true) + " is left open");
  }
  for (int j = 0; j < static_cast<int>(d.outputs.size()); ++j)
    if (!dst_use.count({Port::kBoundary, j})) return fail("output " + std::to_string(j) + " is not connected");
  for (int j = 0; j < static_cast<int>(d.inputs.size()); ++j)
    if (!src_use.count({Port::kBoundary, j}) && d.inputs[static_cast<std::size_t>(j)] != WireType::s())
      return fail("input " + std::to_string(j) + " is left open");

  if (layers(d).empty() && nn > 0) return fail("diagram has a cycle");
  return {};
}

std::vector<std::vector<int>> layers(const Diagram& d) {
  const std::size_t nn = d.nodes.size();
  std::vector<std::vector<int>> succ(nn);
  std::vector<int> indeg(nn, 0), level(nn, 0);
  for (const auto& e : d.edges) {
    if (e.src.node == Port::kBoundary || e.dst.node == Port::kBoundary) continue;
    succ[static_cast<std::size_t>(e.src.node)].push_back(e.dst.node);
    ++indeg[static_cast<std::size_t>(e.dst.node)];
  }
  std::deque<int> ready;
  for (std::size_t i = 0; i < nn; ++i)
    if (indeg[i] == 0) ready.push_back(static_cast<int>(i));
  std::size_t seen = 0;
  int depth = 0;
  while (!ready.empty()) {
    int u = ready.front();
    ready.pop_front();
    ++seen;
    depth = std::max(depth, level[static_cast<std::size_t>(u)] + 1);
    for (int v : succ[static_cast<std::size_t>(u)]) {
      level[static_cast<std::size_t>(v)] = std::max(level[static_cast<std::size_t>(v)], level[static_cast<std::size_t>(u)] + 1);
      if (--indeg[static_cast<std::size_t>(v)] == 0) ready.push_back(v);
    }
  }
  if (seen != nn) return {};
  std::vector<std::vector<int>> out(static_cast<std::size_t>(depth));
  for (std::size_t i = 0; i < nn; ++i) out[static_cast<std::size_t>(level[i])].push_back(static_cast<int>(i));
  return out;
}

std::multiset<std::string> generator_multiset(const Diagram& d, bool include_lexical) {
  std::multiset<std::string> out;
  for (const auto& g : d.nodes)
    if (include_lexical || !g.is_lexical()) out.insert(g.label());
  return out;
}

namespace {

int lexical_key(const Generator& g) {
  if (g.kind == GenKind::State || g.kind == GenKind::DetBox) return g.position;
  if (g.kind == GenKind::FockLift) {
    int best = -1;
    for (const auto& inner : g.body->nodes) {
      int k = lexical_key(inner);
      if (k >= 0 && (best < 0 || k < best)) best = k;
    }
    return best;
  }
  return -1;
}

}  // namespace

Diagram canonicalize(const Diagram& d) {
  const int nn = static_cast<int>(d.nodes.size());
  std::map<Port, Port> src_of, dst_of;
  for (const auto& e : d.edges) {
    src_of[e.dst] = e.src;
    dst_of[e.src] = e.dst;
  }

  std::vector<int> seeds;
  std::vector<std::pair<int, int>> lexical;
  for (int i = 0; i < nn; ++i) {
    int k = lexical_key(d.nodes[static_cast<std::size_t>(i)]);
    if (k >= 0) lexical.emplace_back(k, i);
  }
  std::stable_sort(lexical.begin(), lexical.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [k, i] : lexical) seeds.push_back(i);
  for (int j = 0; j < static_cast<int>(d.inputs.size()); ++j)
    if (auto it = dst_of.find({Port::kBoundary, j}); it != dst_of.end() && it->second.node >= 0)
      seeds.push_back(it->second.node);
  for (int j = 0; j < static_cast<int>(d.outputs.size()); ++j)
    if (auto it = src_of.find({Port::kBoundary, j}); it != src_of.end() && it->second.node >= 0)
      seeds.push_back(it->second.node);
  for (int i = 0; i < nn; ++i) seeds.push_back(i);

  std::vector<int> order, new_index(static_cast<std::size_t>(nn), -1);
  for (int seed : seeds) {
    if (new_index[static_cast<std::size_t>(seed)] >= 0) continue;
    std::deque<int> queue{seed};
    new_index[static_cast<std::size_t>(seed)] = static_cast<int>(order.size());
    order.push_back(seed);
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      const Generator& g = d.nodes[static_cast<std::size_t>(u)];
      auto visit = [&](const Port& p) {
        if (p.node < 0 || new_index[static_cast<std::size_t>(p.node)] >= 0) return;
        new_index[static_cast<std::size_t>(p.node)] = static_cast<int>(order.size());
        order.push_back(p.node);
        queue.push_back(p.node);
      };
      for (int p = 0; p < static_cast<int>(g.inputs.size()); ++p)
        if (auto it = src_of.find({u, p}); it != src_of.end()) visit(it->second);
      for (int p = 0; p < static_cast<int>(g.outputs.size()); ++p)
        if (auto it = dst_of.find({u, p}); it != dst_of.end()) visit(it->second);
    }
  }

  Diagram out;
  out.inputs = d.inputs;
  out.outputs = d.outputs;
  for (int old : order) {
    Generator g = d.nodes[static_cast<std::size_t>(old)];
    if (g.body) g.body = std::make_shared<const Diagram>(canonicalize(*g.body));
    out.nodes.push_back(std::move(g));
  }
  auto remap = [&](Port p) {
    if (p.node >= 0) p.node = new_index[static_cast<std::size_t>(p.node)];
    return p;
  };
  for (const auto& e : d.edges) out.edges.push_back({remap(e.src), remap(e.dst), e.type});
  std::sort(out.edges.begin(), out.edges.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.dst, a.src) < std::tie(b.dst, b.src);
  });
  return out;
}

namespace {

json port_json(Port p) { return json{{"node", p.node}, {"port", p.index}}; }

json wires_json(const std::vector<WireType>& ws) {
  json out = json::array();
  for (const auto& w : ws) out.push_back(w.to_string());
  return out;
}

json raw_json(const Diagram& d) {
  json nodes = json::array();
  for (std::size_t i = 0; i < d.nodes.size(); ++i) {
    const Generator& g = d.nodes[i];
    json n{{"id", i}, {"kind", to_string(g.kind)}, {"inputs", wires_json(g.inputs)}, {"outputs", wires_json(g.outputs)}};
    if (g.kind == GenKind::State || g.kind == GenKind::DetBox) {
      n["word"] = g.word;
      n["position"] = g.position;
      n["formula"] = g.formula;
    }
    if (g.kind == GenKind::Proj) n["copies"] = g.copies;
    if (g.kind == GenKind::FockLift) n["body"] = raw_json(*g.body);
    nodes.push_back(std::move(n));
  }
  json edges = json::array();
  for (const auto& e : d.edges)
    edges.push_back(json{{"from", port_json(e.src)}, {"to", port_json(e.dst)}, {"type", e.type.to_string()}});
  return json{{"inputs", wires_json(d.inputs)}, {"outputs", wires_json(d.outputs)}, {"nodes", std::move(nodes)},
              {"edges", std::move(edges)}};
}

std::vector<WireType> wires_from(const json& j) {
  std::vector<WireType> out;
  for (const auto& w : j) out.push_back(WireType::parse(w.get<std::string>()));
  return out;
}

Port port_from(const json& j) { return {j.at("node").get<int>(), j.at("port").get<int>()}; }

Diagram raw_from_json(const json& j) {
  Diagram d;
  d.inputs = wires_from(j.at("inputs"));
  d.outputs = wires_from(j.at("outputs"));
  for (const auto& n : j.at("nodes")) {
    Generator g;
    g.kind = parse_gen_kind(n.at("kind").get<std::string>());
    g.inputs = wires_from(n.at("inputs"));
    g.outputs = wires_from(n.at("outputs"));
    if (n.contains("word")) g.word = n.at("word").get<std::string>();
    if (n.contains("position")) g.position = n.at("position").get<int>();
    if (n.contains("formula")) g.formula = n.at("formula").get<std::string>();
    if (n.contains("copies")) g.copies = n.at("copies").get<int>();
    if (n.contains("body")) g.body = std::make_shared<const Diagram>(raw_from_json(n.at("body")));
    d.nodes.push_back(std::move(g));
  }
  for (const auto& e : j.at("edges"))
    d.edges.push_back({port_from(e.at("from")), port_from(e.at("to")), WireType::parse(e.at("type").get<std::string>())});
  return d;
}

}  // namespace

json diagram_to_json(const Diagram& d) {
  json out = raw_json(canonicalize(d));
  out["schema_version"] = 1;
  return out;
}

Diagram diagram_from_json(const json& j) {
  try {
    if (j.value("schema_version", 0) != 1) throw DiagramError("unsupported diagram schema version");
    Diagram d = raw_from_json(j);
    if (TypeCheck tc = typecheck(d); !tc) throw DiagramError("ill-typed diagram: " + tc.message);
    return d;
  } catch (const json::exception& e) {
    throw DiagramError(std::string("malformed diagram JSON: ") + e.what());
  } catch (const SyntaxError& e) {
    throw DiagramError(std::string("malformed diagram JSON: ") + e.what());
  }
}

bool same_diagram(const Diagram& a, const Diagram& b) { return diagram_to_json(a) == diagram_to_json(b); }

bool same_up_to_swaps(const Diagram& a, const Diagram& b) {
  return same_diagram(dissolve_swaps(a), dissolve_swaps(b));
}

namespace {

std::string dot_label(const Generator& g) {
  switch (g.kind) {
    case GenKind::State:
      return g.word;
    case GenKind::DetBox:
      return g.word;
    case GenKind::Cup:
      return "cup";
    case GenKind::Cap:
      return "cap";
    case GenKind::Swap:
      return "swap";
    case GenKind::Id:
      return "id";
    case GenKind::Mult:
      return "mult";
    case GenKind::Unit:
      return "unit";
    case GenKind::Comult:
      return "comult";
    case GenKind::Counit:
      return "counit";
    case GenKind::Proj:
      return "proj " + std::to_string(g.copies);
    case GenKind::FockLift: {
      std::string words;
      for (const auto& inner : g.body->nodes)
        if (!inner.word.empty()) words += (words.empty() ? "" : " ") + inner.word;
      return "F(" + (words.empty() ? std::string("...") : words) + ")";
    }
  }
  return "?";
}

const char* dot_shape(GenKind k) {
  switch (k) {
    case GenKind::State:
      return "invtrapezium";
    case GenKind::DetBox:
    case GenKind::FockLift:
      return "box";
    case GenKind::Cup:
    case GenKind::Cap:
      return "plaintext";
    case GenKind::Mult:
    case GenKind::Comult:
    case GenKind::Unit:
    case GenKind::Counit:
      return "circle";
    default:
      return "ellipse";
  }
}

}  // namespace

static std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

std::string diagram_to_dot(const Diagram& raw) {
  Diagram d = canonicalize(raw);
  std::ostringstream os;
  os << "digraph diagram {\n  rankdir=TB;\n  node [fontname=\"Helvetica\"];\n";
  for (std::size_t i = 0; i < d.inputs.size(); ++i) os << "  in" << i << " [shape=point];\n";
  for (std::size_t i = 0; i < d.outputs.size(); ++i) os << "  out" << i << " [shape=point];\n";
  for (std::size_t i = 0; i < d.nodes.size(); ++i)
    os << "  n" << i << " [shape=" << dot_shape(d.nodes[i].kind) << ", label=\"" << dot_escape(dot_label(d.nodes[i]))
       << "\"];\n";
  for (const auto& e : d.edges) {
    auto name = [](Port p, const char* boundary) {
      return p.node == Port::kBoundary ? boundary + std::to_string(p.index) : "n" + std::to_string(p.node);
    };
    os << "  " << name(e.src, "in") << " -> " << name(e.dst, "out") << " [label=\"" << e.type.to_string() << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

std::string diagram_to_text(const Diagram& raw) {
  Diagram d = canonicalize(raw);
  std::ostringstream os;
  os << "inputs " << format_wires(d.inputs) << " -> outputs " << format_wires(d.outputs) << "\n";
  auto ls = layers(d);
  for (std::size_t l = 0; l < ls.size(); ++l) {
    os << "layer " << l << ":";
    for (int i : ls[l]) {
      const Generator& g = d.nodes[static_cast<std::size_t>(i)];
      os << "  #" << i << " " << g.label();
      if (!g.word.empty()) os << "(" << g.word << ")";
      if (g.kind == GenKind::FockLift) os << "[" << dot_label(g) << "]";
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace tlg
