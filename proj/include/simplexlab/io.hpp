#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "json.hpp"
#include "simplexlab/errors.hpp"
#include "simplexlab/structure.hpp"

namespace simplexlab {

using json = nlohmann::json;

// Contents of a structure file:
// {"kind":"tree","simplices":[{"id":"S0","vertices":["a","b","c"]},...],"root":"S0"}
struct StructureFile {
  SimplexStructure structure;
  std::optional<std::string> root;
  std::optional<std::string> free_vertex;

  RootedTree rooted() const {
    if (structure.kind != StructureKind::tree) throw ParameterError("structure is not a tree");
    RootedTree t{structure, root.value_or(structure.simplices.at(0).id), free_vertex};
    return t;
  }
};

inline StructureFile structure_from_json(const json& j) {
  StructureFile f;
  try {
    std::string kind = j.value("kind", "tree");
    if (kind == "tree") {
      f.structure.kind = StructureKind::tree;
    } else if (kind == "cycle") {
      f.structure.kind = StructureKind::cycle;
    } else {
      throw ParameterError("unknown structure kind '" + kind + "'");
    }
    if (!j.contains("simplices") || !j["simplices"].is_array()) throw ParameterError("missing simplices array");
    for (const auto& s : j["simplices"]) {
      Simplex sx;
      sx.id = s.at("id").get<std::string>();
      sx.vertices = s.at("vertices").get<std::vector<std::string>>();
      f.structure.simplices.push_back(std::move(sx));
    }
    if (j.contains("root")) f.root = j["root"].get<std::string>();
    if (j.contains("free_vertex")) f.free_vertex = j["free_vertex"].get<std::string>();
  } catch (const json::exception& e) {
    throw ParameterError(std::string("malformed structure json: ") + e.what());
  }
  if (f.structure.simplices.empty()) throw ParameterError("structure has no simplices");
  if (f.root && !f.structure.find(*f.root)) throw ParameterError("root '" + *f.root + "' is not a simplex id");
  return f;
}

inline StructureFile load_structure(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParameterError("cannot parse " + path + ": " + e.what());
  }
  return structure_from_json(j);
}

inline json to_json(const SimplexStructure& s) {
  json j;
  j["kind"] = kind_name(s.kind);
  j["simplices"] = json::array();
  for (const auto& sx : s.simplices) j["simplices"].push_back({{"id", sx.id}, {"vertices", sx.vertices}});
  return j;
}

inline json to_json(const RootedTree& t) {
  json j = to_json(t.structure);
  j["root"] = t.root;
  if (t.designated_free_vertex) j["free_vertex"] = *t.designated_free_vertex;
  return j;
}

}  // namespace simplexlab
