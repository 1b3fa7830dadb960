#include "tlg/wire.hpp"

#include "tlg/error.hpp"

namespace tlg {

WireType WireType::product(const std::vector<WireType>& parts) {
  std::vector<WireType> flat;
  for (const auto& p : parts) {
    if (p.kind() == Kind::Product)
      flat.insert(flat.end(), p.parts().begin(), p.parts().end());
    else
      flat.push_back(p);
  }
  if (flat.size() == 1) return flat.front();
  if (flat.empty()) throw DiagramError("empty wire bundle");
  return WireType(Kind::Product, std::move(flat));
}

std::strong_ordering operator<=>(const WireType& a, const WireType& b) {
  if (auto c = a.kind_ <=> b.kind_; c != 0) return c;
  return std::lexicographical_compare_three_way(a.parts_.begin(), a.parts_.end(), b.parts_.begin(),
                                                b.parts_.end());
}

std::string WireType::to_string() const {
  switch (kind_) {
    case Kind::N:
      return "N";
    case Kind::S:
      return "S";
    case Kind::Fock:
      return "F(" + inner().to_string() + ")";
    case Kind::Product: {
      std::string out;
      for (std::size_t i = 0; i < parts_.size(); ++i) out += (i ? "*" : "") + parts_[i].to_string();
      return out;
    }
  }
  return "?";
}

namespace {

struct WireParser {
  std::string_view text;
  std::size_t pos = 0;

  WireType product() {
    std::vector<WireType> parts{single()};
    while (pos < text.size() && text[pos] == '*') {
      ++pos;
      parts.push_back(single());
    }
    return WireType::product(parts);
  }

  WireType single() {
    if (pos >= text.size()) throw SyntaxError("unexpected end of wire type", pos);
    char c = text[pos++];
    if (c == 'N') return WireType::n();
    if (c == 'S') return WireType::s();
    if (c == 'F' && pos < text.size() && text[pos] == '(') {
      ++pos;
      WireType inner = product();
      if (pos >= text.size() || text[pos] != ')') throw SyntaxError("expected ')' in wire type", pos);
      ++pos;
      return WireType::fock(inner);
    }
    throw SyntaxError("bad wire type", pos - 1);
  }
};

}  // namespace

WireType WireType::parse(std::string_view text) {
  WireParser p{text};
  WireType w = p.product();
  if (p.pos != text.size()) throw SyntaxError("trailing characters in wire type", p.pos);
  return w;
}

std::vector<WireType> formula_wires(const Formula& f) {
  switch (f.connective()) {
    case Connective::Atom:
      if (f.name() == "n" || f.name() == "np") return {WireType::n()};
      if (f.name() == "s") return {WireType::s()};
      throw DiagramError("atom '" + f.name() + "' has no semantic object");
    case Connective::Under:
    case Connective::Over:
    case Connective::Tensor: {
      auto out = formula_wires(f.left());
      auto rhs = formula_wires(f.right());
      out.insert(out.end(), rhs.begin(), rhs.end());
      return out;
    }
    case Connective::Nabla:
      return formula_wires(f.inner());
    case Connective::Bang:
      return {WireType::fock(bundle(formula_wires(f.inner())))};
  }
  return {};
}

WireType bundle(const std::vector<WireType>& ws) { return WireType::product(ws); }

std::vector<WireType> unbundle(const WireType& w) {
  if (w.kind() == WireType::Kind::Product) return w.parts();
  return {w};
}

std::string format_wires(const std::vector<WireType>& ws) {
  std::string out = "[";
  for (std::size_t i = 0; i < ws.size(); ++i) out += (i ? ", " : "") + ws[i].to_string();
  return out + "]";
}

}  // namespace tlg
