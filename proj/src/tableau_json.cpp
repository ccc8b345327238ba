#include "tabipol/tableau_json.hpp"

#include <json.hpp>

#include "tabipol/parse.hpp"

namespace tabipol {

namespace {

using json = nlohmann::ordered_json;

void build(Tableau& t, int parent, const json& j, bool root) {
  if (!j.is_object()) throw LogicError("tableau: node must be an object");
  int id;
  if (root) {
    if (j.contains("lit"))
      throw LogicError("tableau: the root must not carry a literal");
    id = t.root();
  } else {
    if (!j.contains("lit"))
      throw LogicError("tableau: non-root node without \"lit\"");
    Literal lit = parse_literal(j.at("lit").get<std::string>());
    std::optional<Side> side;
    if (j.contains("side")) {
      std::string s = j.at("side").get<std::string>();
      if (s == "red")
        side = Side::Red;
      else if (s == "blue")
        side = Side::Blue;
      else
        throw LogicError("tableau: unknown side tag \"" + s + "\"");
    }
    id = t.add_child(parent, std::move(lit), side);
  }
  if (j.contains("children")) {
    const json& kids = j.at("children");
    if (!kids.is_array()) throw LogicError("tableau: children must be an array");
    for (const auto& k : kids) build(t, id, k, false);
  }
}

json emit(const Tableau& t, int id) {
  const TabNode& n = t.node(id);
  json j = json::object();
  if (n.lit) j["lit"] = n.lit->str();
  if (n.side) j["side"] = side_name(*n.side);
  if (!n.children.empty()) {
    json kids = json::array();
    for (int c : n.children) kids.push_back(emit(t, c));
    j["children"] = std::move(kids);
  }
  return j;
}

}  // namespace

Tableau parse_tableau(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw LogicError(std::string("tableau: malformed JSON: ") + e.what());
  }
  Tableau t;
  build(t, -1, j, true);
  return assign_targets(std::move(t));
}

std::string print_tableau(const Tableau& t) {
  return emit(t, t.root()).dump(2) + "\n";
}

}  // namespace tabipol
