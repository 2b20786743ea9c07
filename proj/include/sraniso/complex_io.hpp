#pragma once

#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "sraniso/complex.hpp"
#include "sraniso/error.hpp"

namespace sraniso {

/// A complex read from a file, with its optional preferred ordered reference facet.
struct NamedComplex {
  std::string name;
  SimplicialComplex complex;
  std::optional<std::vector<int>> reference;
};

/**
 * \brief Reads {"name": ..., "m": ..., "facets": [[...], ...], "reference_facet": [...]}.
 *
 * "m" defaults to the largest vertex; "reference_facet" is optional.
 */
inline NamedComplex complex_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("facets") || !j["facets"].is_array())
    fail(ErrorKind::ConfigError, "complex JSON needs a \"facets\" array");
  std::vector<Face> facets;
  int top = 0;
  for (const auto& f : j["facets"]) {
    if (!f.is_array()) fail(ErrorKind::ConfigError, "each facet must be an array of vertices");
    Face face;
    for (const auto& v : f) {
      if (!v.is_number_integer()) fail(ErrorKind::ConfigError, "vertices must be integers");
      face.push_back(v.get<int>());
      top = std::max(top, face.back());
    }
    facets.push_back(std::move(face));
  }
  const int m = j.contains("m") ? j["m"].get<int>() : top;
  NamedComplex out{j.value("name", std::string{}), SimplicialComplex::from_facets(m, std::move(facets)), std::nullopt};
  if (j.contains("reference_facet")) out.reference = j["reference_facet"].get<std::vector<int>>();
  return out;
}

inline NamedComplex load_complex(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::ConfigError, "cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::ConfigError, path + ": " + e.what());
  }
  NamedComplex c = complex_from_json(j);
  if (c.name.empty()) c.name = path;
  return c;
}

inline nlohmann::ordered_json complex_to_json(const SimplicialComplex& d, const std::string& name) {
  nlohmann::ordered_json j;
  j["name"] = name;
  j["m"] = d.m();
  j["facets"] = d.facets();
  return j;
}

}  // namespace sraniso
