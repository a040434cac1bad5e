#pragma once

// JSON (de)serialisation of attractors and scatterer specifications.

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "fiem/mesh.hpp"

namespace fiem {

/// {"maps":[{"rho","rotation","translation"}], "ambient_dim", "measure_total",
///  "diameter", "symmetries":[{"rotation","translation"}], "disjointness", "name"}
/// Rotations are n x n; translations have n entries.
nlohmann::json attractor_to_json(const IFSAttractor& ifs);
IFSAttractor attractor_from_json(const nlohmann::json& j);

/// FNV-1a (64 bit) of the canonical JSON text, as 16 hex digits.
std::string attractor_hash(const IFSAttractor& ifs);
std::string scatterer_hash(const ScattererUnion& s);

/// Accepted forms:
///   {"library": name, "rho": .., "n": .., "lift": .., "measure_total": ..}
///   {"ifs": {attractor json}}
///   {"union": [scatterer json, ...]}
/// Library names: cantor_set, cantor_dust, koch_curve, koch_snowflake,
/// koch_snowflake_boundary, sierpinski_tetrahedron.
ScattererUnion scatterer_from_json(const nlohmann::json& j);

/// Compact form "name" or "name:key=value,key=value", e.g.
/// "cantor_dust:rho=0.3333333333333333,n=3".
nlohmann::json scatterer_spec_to_json(std::string_view spec);

}  // namespace fiem
