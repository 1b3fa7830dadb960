#include "tlg/model.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tlg/error.hpp"

namespace tlg {

using nlohmann::json;

Model::Model(std::vector<std::string> universe, std::size_t cap) : universe_(std::move(universe)) {
  if (universe_.size() > cap)
    throw ModelError("universe has " + std::to_string(universe_.size()) + " entities, above the cap of " +
                     std::to_string(cap));
  if (universe_.size() > 63) throw ModelError("universe too large");
  std::set<std::string> seen;
  for (const auto& e : universe_)
    if (!seen.insert(e).second) throw ModelError("entity '" + e + "' declared twice");
}

int Model::entity(const std::string& name) const {
  for (std::size_t i = 0; i < universe_.size(); ++i)
    if (universe_[i] == name) return static_cast<int>(i);
  throw ModelError("unknown entity '" + name + "'");
}

Subset Model::subset(const std::vector<std::string>& names) const {
  Subset s = 0;
  for (const auto& n : names) s |= Subset{1} << entity(n);
  return s;
}

std::string Model::format_subset(Subset s) const {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < universe_.size(); ++i)
    if (s >> i & 1) {
      out += (first ? "" : ", ") + universe_[i];
      first = false;
    }
  return out + "}";
}

void Model::set_unary(const std::string& word, Subset members) {
  if (members & ~full()) throw ModelError("unary '" + word + "' mentions entities outside the universe");
  unary_[word] = members;
}

void Model::set_binary(const std::string& word, std::set<std::pair<int, int>> pairs) {
  for (const auto& [x, y] : pairs)
    if (x < 0 || y < 0 || x >= static_cast<int>(size()) || y >= static_cast<int>(size()))
      throw ModelError("binary '" + word + "' mentions entities outside the universe");
  binary_[word] = std::move(pairs);
}

void Model::set_determiner(const std::string& word, Determiner d) { determiners_[word] = std::move(d); }

const Subset* Model::unary(const std::string& word) const {
  auto it = unary_.find(word);
  return it == unary_.end() ? nullptr : &it->second;
}

const std::set<std::pair<int, int>>* Model::binary(const std::string& word) const {
  auto it = binary_.find(word);
  return it == binary_.end() ? nullptr : &it->second;
}

std::optional<Determiner> Model::determiner(const std::string& word) const {
  if (auto it = determiners_.find(word); it != determiners_.end()) return it->second;
  if (word == "every") return Determiner{DeterminerKind::Every, {}};
  if (word == "some" || word == "a") return Determiner{DeterminerKind::Some, {}};
  return std::nullopt;
}

Model Model::from_json_text(std::string_view text, std::size_t cap) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ModelError(std::string("model is not valid JSON: ") + e.what());
  }
  try {
    Model m(doc.at("universe").get<std::vector<std::string>>(), cap);
    if (doc.contains("unary"))
      for (const auto& [word, members] : doc.at("unary").items())
        m.set_unary(word, m.subset(members.get<std::vector<std::string>>()));
    if (doc.contains("binary"))
      for (const auto& [word, pairs] : doc.at("binary").items()) {
        std::set<std::pair<int, int>> rel;
        for (const auto& p : pairs) {
          if (!p.is_array() || p.size() != 2) throw ModelError("binary '" + word + "' needs [x, y] pairs");
          rel.emplace(m.entity(p[0].get<std::string>()), m.entity(p[1].get<std::string>()));
        }
        m.set_binary(word, std::move(rel));
      }
    if (doc.contains("determiners"))
      for (const auto& [word, entry] : doc.at("determiners").items()) {
        Determiner d;
        if (entry.is_string()) {
          const auto tag = entry.get<std::string>();
          if (tag == "every")
            d.kind = DeterminerKind::Every;
          else if (tag == "some" || tag == "a")
            d.kind = DeterminerKind::Some;
          else
            throw ModelError("unknown determiner tag '" + tag + "'");
        } else {
          d.kind = DeterminerKind::Table;
          for (const auto& p : entry) {
            if (!p.is_array() || p.size() != 2) throw ModelError("determiner '" + word + "' needs [A, B] pairs");
            d.table.emplace(m.subset(p[0].get<std::vector<std::string>>()),
                            m.subset(p[1].get<std::vector<std::string>>()));
          }
        }
        m.set_determiner(word, std::move(d));
      }
    return m;
  } catch (const json::exception& e) {
    throw ModelError(std::string("malformed model: ") + e.what());
  }
}

Model Model::from_file(const std::string& path, std::size_t cap) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot read model file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return from_json_text(buf.str(), cap);
}

Subset forward_image(const std::string& verb, Subset b, const Model& m) {
  const auto* rel = m.binary(verb);
  if (!rel) throw ModelError("no binary relation '" + verb + "' in the model");
  Subset out = 0;
  for (const auto& [x, y] : *rel)
    if (b >> y & 1) out |= Subset{1} << x;
  return out;
}

std::vector<Subset> interp_determiner(const std::string& det, Subset a, const Model& m) {
  auto d = m.determiner(det);
  if (!d) throw ModelError("unknown determiner '" + det + "'");
  std::vector<Subset> out;
  switch (d->kind) {
    case DeterminerKind::Every:
      for (Subset x = 0; x < m.subset_count(); ++x)
        if ((a & ~x) == 0) out.push_back(x);
      break;
    case DeterminerKind::Some:
      for (Subset x = 0; x < m.subset_count(); ++x)
        if (x & a) out.push_back(x);
      break;
    case DeterminerKind::Table:
      for (const auto& [lhs, rhs] : d->table)
        if (lhs == a) out.push_back(rhs);
      break;
  }
  return out;
}

}  // namespace tlg
