#include "tlg/formula.hpp"

#include <cctype>
#include <functional>

#include "tlg/error.hpp"

namespace tlg {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Formula Formula::make(Connective c, std::string name, const Formula* a, const Formula* b) {
  auto node = std::make_shared<Node>();
  node->conn = c;
  node->name = std::move(name);
  std::size_t h = std::hash<int>{}(static_cast<int>(c));
  if (c == Connective::Atom) h = mix(h, std::hash<std::string>{}(node->name));
  if (a) {
    node->a = std::make_shared<const Formula>(*a);
    h = mix(h, a->hash());
    node->size += a->size();
  }
  if (b) {
    node->b = std::make_shared<const Formula>(*b);
    h = mix(h, b->hash());
    node->size += b->size();
  }
  node->hash = h;
  return Formula(std::move(node));
}

Formula Formula::atom(std::string name) { return make(Connective::Atom, std::move(name), nullptr, nullptr); }
Formula Formula::under(Formula arg, Formula result) { return make(Connective::Under, {}, &arg, &result); }
Formula Formula::over(Formula result, Formula arg) { return make(Connective::Over, {}, &result, &arg); }
Formula Formula::tensor(Formula l, Formula r) { return make(Connective::Tensor, {}, &l, &r); }
Formula Formula::bang(Formula inner) { return make(Connective::Bang, {}, &inner, nullptr); }
Formula Formula::nabla(Formula inner) { return make(Connective::Nabla, {}, &inner, nullptr); }

const std::string& Formula::name() const { return node_->name; }
const Formula& Formula::left() const { return *node_->a; }
const Formula& Formula::right() const { return *node_->b; }
const Formula& Formula::inner() const { return *node_->a; }

const Formula& Formula::argument() const {
  return node_->conn == Connective::Under ? *node_->a : *node_->b;
}
const Formula& Formula::result() const {
  return node_->conn == Connective::Under ? *node_->b : *node_->a;
}

bool operator==(const Formula& x, const Formula& y) {
  if (x.node_ == y.node_) return true;
  if (x.hash() != y.hash() || x.size() != y.size() || x.connective() != y.connective()) return false;
  switch (x.connective()) {
    case Connective::Atom:
      return x.name() == y.name();
    case Connective::Bang:
    case Connective::Nabla:
      return x.inner() == y.inner();
    default:
      return x.left() == y.left() && x.right() == y.right();
  }
}

std::strong_ordering operator<=>(const Formula& x, const Formula& y) {
  if (x.node_ == y.node_) return std::strong_ordering::equal;
  if (auto c = static_cast<int>(x.connective()) <=> static_cast<int>(y.connective()); c != 0) return c;
  switch (x.connective()) {
    case Connective::Atom:
      return x.name() <=> y.name();
    case Connective::Bang:
    case Connective::Nabla:
      return x.inner() <=> y.inner();
    default:
      if (auto c = x.left() <=> y.left(); c != 0) return c;
      return x.right() <=> y.right();
  }
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class Parser {
 public:
  Parser(std::string_view text, const std::set<std::string>& atoms) : text_(text), atoms_(atoms) {}

  Formula parse_all() {
    Formula f = parse_tensor();
    skip_ws();
    if (pos_ != text_.size()) throw SyntaxError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    return f;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  // tensor := slash ('.' slash)*
  Formula parse_tensor() {
    Formula f = parse_slash();
    while (peek('.')) {
      ++pos_;
      f = Formula::tensor(f, parse_slash());
    }
    return f;
  }

  // slash := unary (('\' | '/') unary)*   left-associative
  Formula parse_slash() {
    Formula f = parse_unary();
    for (;;) {
      if (peek('\\')) {
        ++pos_;
        f = Formula::under(f, parse_unary());
      } else if (peek('/')) {
        ++pos_;
        f = Formula::over(f, parse_unary());
      } else {
        return f;
      }
    }
  }

  Formula parse_unary() {
    skip_ws();
    if (pos_ >= text_.size()) throw SyntaxError("unexpected end of input", pos_);
    char c = text_[pos_];
    if (c == '!') {
      ++pos_;
      return Formula::bang(parse_unary());
    }
    if (c == '@') {
      ++pos_;
      return Formula::nabla(parse_unary());
    }
    if (c == '(') {
      std::size_t open = pos_++;
      Formula f = parse_tensor();
      if (!peek(')')) throw SyntaxError("unbalanced '(' opened at " + std::to_string(open), pos_);
      ++pos_;
      return f;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      if (!atoms_.count(name)) throw UnknownAtomError("unknown atom '" + name + "' at position " + std::to_string(start));
      return Formula::atom(std::move(name));
    }
    throw SyntaxError(std::string("unexpected '") + c + "'", pos_);
  }

  std::string_view text_;
  const std::set<std::string>& atoms_;
  std::size_t pos_ = 0;
};

// Precedence levels: tensor 0, slash 1, unary/atom 2.
int level(const Formula& f) {
  switch (f.connective()) {
    case Connective::Tensor:
      return 0;
    case Connective::Under:
    case Connective::Over:
      return 1;
    default:
      return 2;
  }
}

void format_into(const Formula& f, std::string& out);

void format_wrapped(const Formula& f, bool parens, std::string& out) {
  if (parens) out += '(';
  format_into(f, out);
  if (parens) out += ')';
}

void format_into(const Formula& f, std::string& out) {
  switch (f.connective()) {
    case Connective::Atom:
      out += f.name();
      return;
    case Connective::Bang:
    case Connective::Nabla:
      out += f.is_bang() ? '!' : '@';
      format_wrapped(f.inner(), level(f.inner()) < 2, out);
      return;
    case Connective::Tensor:
      format_wrapped(f.left(), false, out);
      out += '.';
      format_wrapped(f.right(), level(f.right()) < 1, out);
      return;
    case Connective::Under:
    case Connective::Over:
      format_wrapped(f.left(), level(f.left()) < 1, out);
      out += f.connective() == Connective::Under ? '\\' : '/';
      format_wrapped(f.right(), level(f.right()) < 2, out);
      return;
  }
}

}  // namespace

Formula parse_formula(std::string_view text, const std::set<std::string>& atoms) {
  return Parser(text, atoms).parse_all();
}

std::string format_formula(const Formula& f) {
  std::string out;
  format_into(f, out);
  return out;
}

const Formula& strip_modalities(const Formula& f) {
  const Formula* cur = &f;
  while (cur->is_bang() || cur->is_nabla()) cur = &cur->inner();
  return *cur;
}

std::strong_ordering operator<=>(const Sequent& a, const Sequent& b) {
  if (auto c = std::lexicographical_compare_three_way(a.antecedent.begin(), a.antecedent.end(),
                                                      b.antecedent.begin(), b.antecedent.end());
      c != 0)
    return c;
  return a.succedent <=> b.succedent;
}

std::size_t SequentHash::operator()(const Sequent& s) const {
  std::size_t h = s.succedent.hash();
  for (const auto& f : s.antecedent) h = mix(h, f.hash());
  return mix(h, s.antecedent.size());
}

std::string format_sequent(const Sequent& s) {
  std::string out;
  for (std::size_t i = 0; i < s.antecedent.size(); ++i) {
    if (i) out += ", ";
    out += format_formula(s.antecedent[i]);
  }
  out += " -> ";
  out += format_formula(s.succedent);
  return out;
}

Sequent parse_sequent(std::string_view text, const std::set<std::string>& atoms) {
  auto arrow = text.find("->");
  if (arrow == std::string_view::npos) throw SyntaxError("missing '->'", text.size());
  Sequent s{{}, parse_formula(text.substr(arrow + 2), atoms)};
  std::string_view lhs = text.substr(0, arrow);
  std::size_t start = 0;
  for (;;) {
    auto comma = lhs.find(',', start);
    auto piece = lhs.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    try {
      s.antecedent.push_back(parse_formula(piece, atoms));
    } catch (const SyntaxError& e) {
      throw SyntaxError("bad antecedent formula '" + std::string(piece) + "'", start + e.position());
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return s;
}

}  // namespace tlg
