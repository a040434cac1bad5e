#pragma once

// Run configuration: one JSON document, optionally overridden by flags.

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fiem/kernels.hpp"
#include "fiem/mesh.hpp"

namespace fiem::app {

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct SamplingSpec {
    // near-field sample set of convergence studies (2D: square perimeter)
    std::array<double, 4> window{-1.0, 2.0, -1.5, 1.5};
    int per_edge = 50;
    // 3D near-field sample set: sphere about the barycentre, radius 0 = 2 diam
    double sphere_radius = 0.0;
    // field grid written by solve/field; in 3D it lies in the plane z = grid_z
    std::array<double, 4> grid_window{-1.0, 2.0, -1.5, 1.5};
    int grid_nx = 61;
    int grid_ny = 61;
    double grid_z = 0.0;
    // far-field directions
    int far_count = 50;
    int far_polar = 10;
    int far_azimuth = 20;
};

struct RunConfig {
    nlohmann::json scatterer{{"library", "cantor_set"}, {"rho", 1.0 / 3.0}};
    double k = 5.0;
    std::vector<double> theta;  ///< empty = first coordinate axis
    std::optional<int> level;
    std::optional<double> h;
    int level_max = 3;
    std::optional<int> level_ref;   ///< default level_max + 2 (2D), + 1 (3D)
    std::optional<double> h_ratio;  ///< h-indexed studies: h_l = diam * h_ratio^l
    std::optional<double> c_q;
    bool high_k = false;
    SamplingSpec sampling;
    std::string out = "out";
    bool deterministic = true;
    double memory_budget_gib = 2.0;
    std::string fundamental_cache;  ///< directory; empty disables caching
    bool dump_system = false;
};

RunConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const RunConfig& config);
RunConfig load_config(const std::string& path);

/// Throws ConfigError on out-of-range values.
void validate(const RunConfig& config);

ScattererUnion make_scatterer(const RunConfig& config);
WaveParams make_wave(const RunConfig& config, int dim);
double resolve_cq(const RunConfig& config, const ScattererUnion& scatterer);
int resolve_level_ref(const RunConfig& config, int dim);

/// Mesh for level l: uniform on homogeneous scatterers, else width
/// max_diam * ratio^l with ratio = h_ratio or the largest contraction factor.
Mesh level_mesh(const RunConfig& config, const ScattererUnion& scatterer, int level);
/// Mesh of a single solve: `h` when given, else level_mesh(level or 0).
Mesh solve_mesh(const RunConfig& config, const ScattererUnion& scatterer);

}  // namespace fiem::app
