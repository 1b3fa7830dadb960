#include "contract.hpp"

#include <iomanip>
#include <sstream>

namespace tlg {

namespace detail {

namespace {

bool is_atom(const Formula& f, const char* name) { return f.is_atom() && f.name() == name; }

const Formula& np() {
  static const Formula f = Formula::atom("np");
  return f;
}
const Formula& s() {
  static const Formula f = Formula::atom("s");
  return f;
}

bool is_determiner_type(const Formula& f) {
  const Formula& matrix = strip_modalities(f);
  return matrix.connective() == Connective::Over && is_atom(matrix.argument(), "n") &&
         is_atom(strip_modalities(matrix.result()), "np");
}

// Every combination of one element per list.
std::vector<Tuple> product(const std::vector<std::vector<std::uint64_t>>& columns, std::uint64_t budget) {
  std::vector<Tuple> out{{}};
  for (const auto& col : columns) {
    std::vector<Tuple> next;
    for (const auto& prefix : out)
      for (auto x : col) {
        next.push_back(prefix);
        next.back().push_back(x);
        if (next.size() > budget) throw BudgetExceeded("relation exceeds the element budget");
      }
    out = std::move(next);
  }
  return out;
}

std::vector<std::uint64_t> all_of(const WireType& w, const Model& m, int k, std::uint64_t budget) {
  Carrier c(w, m.size(), k, budget);
  std::vector<std::uint64_t> out(c.size());
  std::iota(out.begin(), out.end(), 0);
  return out;
}

std::vector<std::uint64_t> pinned_or_all(const std::optional<std::uint64_t>& pin, const WireType& w, const Model& m,
                                         int k, std::uint64_t budget) {
  if (pin) return {*pin};
  return all_of(w, m, k, budget);
}

// Elements of the determiner's result strings built from members of ⟦det⟧(a).
std::vector<Tuple> determiner_images(const std::string& word, Subset a, const std::vector<WireType>& result,
                                     const Model& m, int k, std::uint64_t budget) {
  const auto allowed = interp_determiner(word, a, m);
  std::vector<std::vector<std::uint64_t>> cols;
  for (const auto& w : result) cols.push_back(Carrier(w, m.size(), k, budget).elements_over(allowed));
  return product(cols, budget);
}

}  // namespace

std::vector<Tuple> word_tuples(const std::string& word, const Formula& f, const Model& m, int k,
                               std::uint64_t budget) {
  if (f.is_nabla()) return word_tuples(word, f.inner(), m, k, budget);
  if (f.is_bang()) {
    const auto inner_wires = formula_wires(f.inner());
    Table<BoolRing> body;
    for (auto& t : word_tuples(word, f.inner(), m, k, budget)) body.emplace(std::move(t), true);
    std::vector<Tuple> out;
    for (auto& [t, w] : lift_table<BoolRing>(body, {}, inner_wires, m.size(), k, budget)) out.push_back(t);
    std::sort(out.begin(), out.end());
    return out;
  }

  const Formula np_s = Formula::under(np(), s());
  std::vector<Tuple> out;
  auto need_unary = [&]() -> Subset {
    const Subset* u = m.unary(word);
    if (!u) throw ModelError("no denotation for '" + word + "' in the model (type " + format_formula(f) + ")");
    return *u;
  };

  if (is_atom(f, "n") || is_atom(f, "np")) {
    out.push_back({need_unary()});
  } else if (f == np_s) {
    out.push_back({need_unary(), 0});
  } else if (f == Formula::over(np_s, np())) {
    if (!m.binary(word)) throw ModelError("no binary relation '" + word + "' in the model");
    for (Subset b = 0; b < m.subset_count(); ++b) out.push_back({forward_image(word, b, m), 0, b});
  } else if (is_determiner_type(f) && m.determiner(word)) {
    const auto result = formula_wires(strip_modalities(f).result());
    for (Subset a = 0; a < m.subset_count(); ++a)
      for (auto& y : determiner_images(word, a, result, m, k, budget)) {
        y.push_back(a);
        out.push_back(std::move(y));
      }
  } else if (f == Formula::over(Formula::under(np(), np()), np_s)) {
    for (Subset a = 0; a < m.subset_count(); ++a)
      for (Subset c = 0; c < m.subset_count(); ++c) out.push_back({a, a & c, c, 0});
  } else if (f == Formula::under(Formula::nabla(np()), np())) {
    for (Subset a = 0; a < m.subset_count(); ++a) out.push_back({a, a});
  } else {
    throw ModelError("no interpretation for '" + word + "' at type " + format_formula(f));
  }
  return out;
}

std::vector<Tuple> primitive_tuples(const Generator& g, const Model& m, int k, const Fixed& fixed,
                                    std::uint64_t budget) {
  auto pin = [&](std::size_t i) { return i < fixed.size() ? fixed[i] : std::nullopt; };
  std::vector<Tuple> out;
  switch (g.kind) {
    case GenKind::State:
      return word_tuples(g.word, parse_formula(g.formula), m, k, budget);
    case GenKind::DetBox: {
      for (auto a : pinned_or_all(pin(0), WireType::n(), m, k, budget))
        for (auto& y : determiner_images(g.word, a, g.outputs, m, k, budget)) {
          y.insert(y.begin(), a);
          out.push_back(std::move(y));
        }
      return out;
    }
    case GenKind::Cup:
    case GenKind::Cap:
    case GenKind::Id:
      for (auto x : all_of(g.kind == GenKind::Cap ? g.outputs[0] : g.inputs[0], m, k, budget)) out.push_back({x, x});
      return out;
    case GenKind::Swap:
      for (auto x : pinned_or_all(pin(0), g.inputs[0], m, k, budget))
        for (auto y : pinned_or_all(pin(1), g.inputs[1], m, k, budget)) out.push_back({x, y, y, x});
      return out;
    case GenKind::Mult:
      for (auto a : pinned_or_all(pin(0), WireType::n(), m, k, budget))
        for (auto b : pinned_or_all(pin(1), WireType::n(), m, k, budget)) out.push_back({a, b, a & b});
      return out;
    case GenKind::Unit:
      return {{g.outputs[0] == WireType::n() ? m.full() : 0}};
    case GenKind::Comult:
      for (auto a : pinned_or_all(pin(0), WireType::n(), m, k, budget)) out.push_back({a, a, a});
      return out;
    case GenKind::Counit:
      for (auto a : pinned_or_all(pin(0), g.inputs[0], m, k, budget)) out.push_back({a});
      return out;
    case GenKind::Proj: {
      const Carrier fock(g.inputs[0], m.size(), k, budget);
      const Carrier& inner = fock.inner();
      auto emit = [&](const Tuple& items) {
        Tuple row{fock.fock_encode(items)};
        for (auto x : items) {
          Tuple parts = inner.unpack(x);
          row.insert(row.end(), parts.begin(), parts.end());
        }
        out.push_back(std::move(row));
      };
      if (auto p = pin(0)) {
        Tuple items = fock.fock_decode(*p);
        if (static_cast<int>(items.size()) == g.copies) emit(items);
        return out;
      }
      if (g.copies > k) return out;
      std::vector<std::vector<std::uint64_t>> cols(static_cast<std::size_t>(g.copies));
      for (auto& c : cols) {
        c.resize(inner.size());
        std::iota(c.begin(), c.end(), 0);
      }
      for (const auto& items : product(cols, budget)) emit(items);
      return out;
    }
    case GenKind::FockLift:
      break;
  }
  throw DiagramError("no primitive table for " + g.label());
}

}  // namespace detail

using detail::BoolRing;
using detail::RationalRing;

void FinRel::insert(Tuple src, Tuple dst) {
  if (src.size() != source_.size() || dst.size() != target_.size()) throw ModelError("relation arity mismatch");
  pairs_.emplace(std::move(src), std::move(dst));
}

FinRel FinRel::then(const FinRel& next) const {
  if (target_ != next.source_) throw ModelError("composing relations over different carriers");
  std::map<Tuple, std::vector<const Tuple*>> by_source;
  for (const auto& [a, b] : next.pairs_) by_source[a].push_back(&b);
  FinRel out(source_, next.target_);
  for (const auto& [a, b] : pairs_)
    if (auto it = by_source.find(b); it != by_source.end())
      for (const auto* c : it->second) out.pairs_.emplace(a, *c);
  return out;
}

FinRel FinRel::tensor(const FinRel& other) const {
  auto cat = [](std::vector<WireType> a, const std::vector<WireType>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  };
  FinRel out(cat(source_, other.source_), cat(target_, other.target_));
  for (const auto& [a, b] : pairs_)
    for (const auto& [c, d] : other.pairs_) {
      Tuple src = a, dst = b;
      src.insert(src.end(), c.begin(), c.end());
      dst.insert(dst.end(), d.begin(), d.end());
      out.pairs_.emplace(std::move(src), std::move(dst));
    }
  return out;
}

FinRel FinRel::converse() const {
  FinRel out(target_, source_);
  for (const auto& [a, b] : pairs_) out.pairs_.emplace(b, a);
  return out;
}

FinRel FinRel::identity(const std::vector<WireType>& wires, std::size_t universe, int k) {
  FinRel out(wires, wires);
  std::vector<std::vector<std::uint64_t>> cols;
  for (const auto& w : wires) {
    Carrier c(w, universe, k);
    std::vector<std::uint64_t> col(c.size());
    std::iota(col.begin(), col.end(), 0);
    cols.push_back(std::move(col));
  }
  for (auto& t : detail::product(cols, kDefaultBudget)) out.pairs_.emplace(t, t);
  return out;
}

namespace {

FinRel rel_from_rows(const std::vector<WireType>& ins, const std::vector<WireType>& outs,
                     const std::vector<Tuple>& rows) {
  FinRel r(ins, outs);
  for (const auto& t : rows)
    r.insert(Tuple(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(ins.size())),
             Tuple(t.begin() + static_cast<std::ptrdiff_t>(ins.size()), t.end()));
  return r;
}

template <class Ring>
detail::Table<Ring> table_of(const FinRel& r) {
  detail::Table<Ring> t;
  for (const auto& [a, b] : r.pairs()) {
    Tuple row = a;
    row.insert(row.end(), b.begin(), b.end());
    t.emplace(std::move(row), Ring::one());
  }
  return t;
}

}  // namespace

FinRel interp_word_rel(const std::string& word, const Formula& f, const Model& m, int k, std::uint64_t budget) {
  return rel_from_rows({}, formula_wires(f), detail::word_tuples(word, f, m, k, budget));
}

FinRel fock_lift(const FinRel& r, std::size_t universe, int k, std::uint64_t budget) {
  auto lifted = detail::lift_table<BoolRing>(table_of<BoolRing>(r), r.source(), r.target(), universe, k, budget);
  std::vector<WireType> ins;
  if (!r.source().empty()) ins.push_back(WireType::fock(bundle(r.source())));
  FinRel out(ins, {WireType::fock(bundle(r.target()))});
  for (const auto& [t, w] : lifted)
    out.insert(Tuple(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(ins.size())),
               Tuple(t.begin() + static_cast<std::ptrdiff_t>(ins.size()), t.end()));
  return out;
}

FinRel generator_rel(const Generator& g, const Model& m, int k, std::uint64_t budget) {
  if (g.kind == GenKind::FockLift) return fock_lift(eval_diagram_rel(*g.body, m, k, budget), m.size(), k, budget);
  return rel_from_rows(g.inputs, g.outputs, detail::primitive_tuples(g, m, k, {}, budget));
}

FinRel projection(const std::vector<WireType>& inner, int n, std::size_t universe, int k, std::uint64_t budget) {
  Generator g = Generator::proj(n, inner);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < universe; ++i) names.push_back("e" + std::to_string(i));
  return rel_from_rows(g.inputs, g.outputs, detail::primitive_tuples(g, Model(names, universe), k, {}, budget));
}

FinRel eval_diagram_rel(const Diagram& d, const Model& m, int k, std::uint64_t budget) {
  auto table = detail::evaluate<BoolRing>(d, m, k, budget);
  FinRel out(d.inputs, d.outputs);
  const auto ni = static_cast<std::ptrdiff_t>(d.inputs.size());
  for (const auto& [t, w] : table)
    if (w) out.insert(Tuple(t.begin(), t.begin() + ni), Tuple(t.begin() + ni, t.end()));
  return out;
}

bool sentence_truth(const Diagram& d, const Model& m, int k, std::uint64_t budget) {
  return !eval_diagram_rel(d, m, k, budget).empty();
}

void SparseTensor::add(const Tuple& in, const Tuple& out, const Rational& v) {
  if (in.size() != inputs_.size() || out.size() != outputs_.size()) throw ModelError("tensor index arity mismatch");
  if (v == 0) return;
  auto key = std::make_pair(in, out);
  auto it = entries_.find(key);
  if (it == entries_.end()) {
    entries_.emplace(std::move(key), v);
    return;
  }
  it->second += v;
  if (it->second == 0) entries_.erase(it);
}

Rational SparseTensor::at(const Tuple& in, const Tuple& out) const {
  auto it = entries_.find({in, out});
  return it == entries_.end() ? Rational(0) : it->second;
}

SparseTensor SparseTensor::then(const SparseTensor& next) const {
  if (outputs_ != next.inputs_) throw ModelError("composing tensors over different carriers");
  std::map<Tuple, std::vector<std::pair<const Tuple*, const Rational*>>> rows;
  for (const auto& [key, v] : next.entries_) rows[key.first].emplace_back(&key.second, &v);
  SparseTensor out(inputs_, next.outputs_);
  for (const auto& [key, v] : entries_)
    if (auto it = rows.find(key.second); it != rows.end())
      for (const auto& [dst, w] : it->second) out.add(key.first, *dst, v * *w);
  return out;
}

SparseTensor SparseTensor::tensor(const SparseTensor& other) const {
  auto cat = [](std::vector<WireType> a, const std::vector<WireType>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  };
  SparseTensor out(cat(inputs_, other.inputs_), cat(outputs_, other.outputs_));
  for (const auto& [k1, v1] : entries_)
    for (const auto& [k2, v2] : other.entries_) {
      Tuple in = k1.first, o = k1.second;
      in.insert(in.end(), k2.first.begin(), k2.first.end());
      o.insert(o.end(), k2.second.begin(), k2.second.end());
      out.add(in, o, v1 * v2);
    }
  return out;
}

FinRel SparseTensor::support() const {
  FinRel r(inputs_, outputs_);
  for (const auto& [key, v] : entries_) r.insert(key.first, key.second);
  return r;
}

SparseTensor SparseTensor::indicator(const FinRel& r) {
  SparseTensor t(r.source(), r.target());
  for (const auto& [a, b] : r.pairs()) t.add(a, b, 1);
  return t;
}

SparseTensor interp_word_vec(const std::string& word, const Formula& f, const Model& m, int k, std::uint64_t budget) {
  return SparseTensor::indicator(interp_word_rel(word, f, m, k, budget));
}

namespace {

SparseTensor tensor_from_table(const std::vector<WireType>& ins, const std::vector<WireType>& outs,
                               const detail::Table<RationalRing>& table) {
  SparseTensor t(ins, outs);
  const auto ni = static_cast<std::ptrdiff_t>(ins.size());
  for (const auto& [row, w] : table) t.add(Tuple(row.begin(), row.begin() + ni), Tuple(row.begin() + ni, row.end()), w);
  return t;
}

}  // namespace

SparseTensor generator_vec(const Generator& g, const Model& m, int k, std::uint64_t budget) {
  if (g.kind == GenKind::FockLift) {
    auto body = detail::evaluate<RationalRing>(*g.body, m, k, budget);
    auto lifted = detail::lift_table<RationalRing>(body, g.body->inputs, g.body->outputs, m.size(), k, budget);
    return tensor_from_table(g.inputs, g.outputs, lifted);
  }
  return SparseTensor::indicator(generator_rel(g, m, k, budget));
}

SparseTensor eval_diagram_vec(const Diagram& d, const Model& m, int k, std::uint64_t budget) {
  return tensor_from_table(d.inputs, d.outputs, detail::evaluate<RationalRing>(d, m, k, budget));
}

Rational sentence_scalar(const Diagram& d, const Model& m, int k, std::uint64_t budget) {
  if (!d.inputs.empty()) throw DiagramError("sentence diagrams have no inputs");
  for (const auto& w : d.outputs)
    if (w != WireType::s()) throw DiagramError("sentence diagrams output only S wires");
  Rational total = 0;
  const SparseTensor t = eval_diagram_vec(d, m, k, budget);
  for (const auto& [key, v] : t.entries()) total += v;
  return total;
}

bool check_equivalence(const Diagram& d, const Model& m, int k, std::uint64_t budget) {
  return (sentence_scalar(d, m, k, budget) != 0) == sentence_truth(d, m, k, budget);
}

std::string format_rational(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace tlg
