#include <map>
#include <optional>
#include <set>

#include "tlg/diagram.hpp"
#include "tlg/error.hpp"

namespace tlg {

namespace {

// Mutable view of a diagram with port-level adjacency, for local rewrites.
class Graph {
 public:
  explicit Graph(const Diagram& d) : inputs_(d.inputs), outputs_(d.outputs), nodes_(d.nodes), alive_(d.nodes.size(), true) {
    for (const auto& e : d.edges) link(e.src, e.dst);
  }

  std::size_t size() const { return nodes_.size(); }
  bool alive(int n) const { return alive_[static_cast<std::size_t>(n)]; }
  Generator& node(int n) { return nodes_[static_cast<std::size_t>(n)]; }

  int add(Generator g) {
    nodes_.push_back(std::move(g));
    alive_.push_back(true);
    return static_cast<int>(nodes_.size()) - 1;
  }

  std::optional<Port> source(Port dst) const {
    auto it = src_of_.find(dst);
    return it == src_of_.end() ? std::nullopt : std::optional<Port>(it->second);
  }
  std::optional<Port> target(Port src) const {
    auto it = dst_of_.find(src);
    return it == dst_of_.end() ? std::nullopt : std::optional<Port>(it->second);
  }

  void link(Port src, Port dst) {
    if (dst_of_.count(src) || src_of_.count(dst)) throw DiagramError("rewrite would reuse a port");
    dst_of_[src] = dst;
    src_of_[dst] = src;
  }
  void link(std::optional<Port> src, std::optional<Port> dst) {
    if (src && dst) link(*src, *dst);
  }

  void remove(int n) {
    const Generator& g = node(n);
    for (int p = 0; p < static_cast<int>(g.inputs.size()); ++p)
      if (auto s = source({n, p})) {
        dst_of_.erase(*s);
        src_of_.erase({n, p});
      }
    for (int p = 0; p < static_cast<int>(g.outputs.size()); ++p)
      if (auto t = target({n, p})) {
        src_of_.erase(*t);
        dst_of_.erase({n, p});
      }
    alive_[static_cast<std::size_t>(n)] = false;
  }

  // Replaces a swap by the crossing it denotes.
  void dissolve(int w) {
    auto s0 = source({w, 0}), s1 = source({w, 1});
    auto t0 = target({w, 0}), t1 = target({w, 1});
    remove(w);
    link(s0, t1);
    link(s1, t0);
  }

  // Whether `from` can reach `to` along edges.
  bool reaches(int from, int to) const {
    std::set<int> seen;
    std::vector<int> stack{from};
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      if (u == to) return true;
      if (!seen.insert(u).second) continue;
      const Generator& g = nodes_[static_cast<std::size_t>(u)];
      for (int p = 0; p < static_cast<int>(g.outputs.size()); ++p)
        if (auto t = target({u, p}); t && t->node >= 0) stack.push_back(t->node);
    }
    return false;
  }

  Diagram build() const {
    Diagram d;
    d.inputs = inputs_;
    d.outputs = outputs_;
    std::vector<int> index(nodes_.size(), -1);
    for (std::size_t i = 0; i < nodes_.size(); ++i)
      if (alive_[i]) index[i] = d.add(nodes_[i]);
    auto remap = [&](Port p) {
      if (p.node >= 0) p.node = index[static_cast<std::size_t>(p.node)];
      return p;
    };
    for (const auto& [src, dst] : dst_of_) d.connect(remap(src), remap(dst));
    return d;
  }

 private:
  std::vector<WireType> inputs_, outputs_;
  std::vector<Generator> nodes_;
  std::vector<bool> alive_;
  std::map<Port, Port> src_of_, dst_of_;
};

bool is_kind(Graph& g, std::optional<Port> p, GenKind k) {
  return p && p->node >= 0 && g.alive(p->node) && g.node(p->node).kind == k;
}

void substitute_node(Graph& g, int n, WiringTag tag, const Formula& f) {
  const Generator box = g.node(n);
  std::vector<std::optional<Port>> t;
  for (int p = 0; p < static_cast<int>(box.outputs.size()); ++p) t.push_back(g.target({n, p}));
  const WireType N = WireType::n();
  switch (tag) {
    case WiringTag::RelproSubject: {
      // (np\np)/(np\s): strings [head in, head out, clause subject, clause sentence].
      g.remove(n);
      int head = g.add(Generator::cap(N));
      int subj = g.add(Generator::cap(N));
      int mult = g.add(Generator::mult());
      int unit = g.add(Generator::unit(WireType::s()));
      g.link(Port{head, 0}, t[0]);
      g.link(Port{head, 1}, Port{mult, 0});
      g.link(Port{subj, 0}, t[2]);
      g.link(Port{subj, 1}, Port{mult, 1});
      g.link(Port{mult, 0}, t[1]);
      g.link(Port{unit, 0}, t[3]);
      break;
    }
    case WiringTag::PronounCap: {
      g.remove(n);
      int cap = g.add(Generator::cap(N));
      g.link(Port{cap, 0}, t[0]);
      g.link(Port{cap, 1}, t[1]);
      break;
    }
    case WiringTag::DeterminerBox: {
      Generator det = Generator::det_box(box.word, box.position, f);
      if (det.outputs.size() + 1 != box.outputs.size()) throw DiagramError("determiner box shape mismatch");
      g.remove(n);
      int cap = g.add(Generator::cap(N));
      int d = g.add(std::move(det));
      g.link(Port{cap, 0}, t.back());
      g.link(Port{cap, 1}, Port{d, 0});
      for (int p = 0; p + 1 < static_cast<int>(t.size()); ++p) g.link(Port{d, p}, t[static_cast<std::size_t>(p)]);
      break;
    }
    case WiringTag::Plain:
      break;
  }
}

std::shared_ptr<const Diagram> map_body(const Generator& gen, Diagram (*fn)(const Diagram&)) {
  return std::make_shared<const Diagram>(fn(*gen.body));
}

// One rewrite step; returns whether anything changed.
bool simplify_step(Graph& g) {
  const WireType S = WireType::s();
  for (int n = 0; n < static_cast<int>(g.size()); ++n) {
    if (!g.alive(n)) continue;
    const Generator gen = g.node(n);
    switch (gen.kind) {
      case GenKind::Id: {
        auto s = g.source({n, 0});
        auto t = g.target({n, 0});
        g.remove(n);
        g.link(s, t);
        return true;
      }
      case GenKind::Proj: {
        auto s = g.source({n, 0});
        if (gen.copies != 1 || !is_kind(g, s, GenKind::FockLift)) break;
        const int lift = s->node;
        if (!g.node(lift).inputs.empty()) break;
        const Diagram body = *g.node(lift).body;
        std::vector<std::optional<Port>> t;
        for (int p = 0; p < static_cast<int>(gen.outputs.size()); ++p) t.push_back(g.target({n, p}));
        g.remove(n);
        g.remove(lift);
        std::vector<int> index;
        for (const auto& inner : body.nodes) index.push_back(g.add(inner));
        for (const auto& e : body.edges) {
          Port src{index[static_cast<std::size_t>(e.src.node)], e.src.index};
          if (e.dst.node == Port::kBoundary)
            g.link(src, t[static_cast<std::size_t>(e.dst.index)]);
          else
            g.link(src, Port{index[static_cast<std::size_t>(e.dst.node)], e.dst.index});
        }
        return true;
      }
      case GenKind::Cap: {
        for (int q = 0; q < 2; ++q) {
          auto t = g.target({n, q});
          if (!is_kind(g, t, GenKind::Cup)) continue;
          const int cup = t->node;
          auto r = g.source({cup, 1 - t->index});
          auto d = g.target({n, 1 - q});
          if (r && r->node == n) continue;  // closed loop
          if (r && d && r->node >= 0 && d->node >= 0 && (r->node == d->node || g.reaches(d->node, r->node))) continue;
          g.remove(n);
          g.remove(cup);
          g.link(r, d);
          return true;
        }
        auto t0 = g.target({n, 0}), t1 = g.target({n, 1});
        if (is_kind(g, t0, GenKind::Swap) && t1 && t0->node == t1->node) {
          g.dissolve(t0->node);
          return true;
        }
        if (gen.outputs[0] == S && !t0 && !t1) {
          g.remove(n);
          return true;
        }
        break;
      }
      case GenKind::Swap: {
        auto t0 = g.target({n, 0}), t1 = g.target({n, 1});
        if (t0 && t1 && t0->node >= 0 && t0->node == t1->node) {
          const GenKind k = g.node(t0->node).kind;
          if (k == GenKind::Cup) {
            const int cup = t0->node;
            auto s0 = g.source({n, 0}), s1 = g.source({n, 1});
            g.remove(n);
            g.remove(cup);
            int c = g.add(Generator::cup(gen.inputs[0]));
            g.link(s0, Port{c, 0});
            g.link(s1, Port{c, 1});
            return true;
          }
          if (k == GenKind::Swap) {
            const int other = t0->node;
            g.dissolve(n);
            g.dissolve(other);
            return true;
          }
        }
        if (gen.inputs[0] == S || gen.inputs[1] == S) {
          g.dissolve(n);
          return true;
        }
        break;
      }
      case GenKind::Cup:
        if (gen.inputs[0] == S) {
          g.remove(n);
          return true;
        }
        break;
      case GenKind::Unit:
        if (gen.outputs[0] == S && !g.target({n, 0})) {
          g.remove(n);
          return true;
        }
        break;
      case GenKind::Counit:
        if (gen.inputs[0] == S) {
          g.remove(n);
          return true;
        }
        break;
      default:
        break;
    }
  }
  return false;
}

}  // namespace

Diagram substitute_wirings(const Diagram& d, const Lexicon& lex) {
  Graph g(d);
  const std::size_t original = g.size();
  for (int n = 0; n < static_cast<int>(original); ++n) {
    Generator& gen = g.node(n);
    if (gen.kind == GenKind::FockLift) {
      auto body = std::make_shared<const Diagram>(substitute_wirings(*gen.body, lex));
      gen.body = std::move(body);
      continue;
    }
    if (gen.kind != GenKind::State) continue;
    const WiringTag tag = lex.wiring(gen.word);
    if (tag == WiringTag::Plain) continue;
    Formula f = parse_formula(gen.formula, lex.atoms());
    if (!formula_fits_wiring(tag, f))
      throw DiagramError("word '" + gen.word + "' is tagged " + to_string(tag) + " but has type " + gen.formula);
    substitute_node(g, n, tag, f);
  }
  return g.build();
}

Diagram simplify(const Diagram& d) {
  Graph g(d);
  for (int n = 0; n < static_cast<int>(g.size()); ++n)
    if (g.node(n).kind == GenKind::FockLift) g.node(n).body = map_body(g.node(n), &simplify);
  while (simplify_step(g)) {
  }
  return g.build();
}

Diagram normalize_swaps(const Diagram& d) {
  Graph g(d);
  for (int n = 0; n < static_cast<int>(g.size()); ++n)
    if (g.node(n).kind == GenKind::FockLift) g.node(n).body = map_body(g.node(n), &normalize_swaps);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int n = 0; n < static_cast<int>(g.size()) && !changed; ++n) {
      if (!g.alive(n) || g.node(n).kind != GenKind::Swap) continue;
      auto t0 = g.target({n, 0}), t1 = g.target({n, 1});
      if (is_kind(g, t0, GenKind::Swap) && t1 && t0->node == t1->node) {
        const int other = t0->node;
        g.dissolve(n);
        g.dissolve(other);
        changed = true;
      }
    }
  }
  return g.build();
}

Diagram dissolve_swaps(const Diagram& d) {
  Graph g(d);
  for (int n = 0; n < static_cast<int>(g.size()); ++n) {
    if (!g.alive(n)) continue;
    if (g.node(n).kind == GenKind::FockLift) g.node(n).body = map_body(g.node(n), &dissolve_swaps);
    if (g.node(n).kind == GenKind::Swap) g.dissolve(n);
  }
  return g.build();
}

}  // namespace tlg
