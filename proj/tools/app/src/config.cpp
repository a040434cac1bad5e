#include "fiem/app/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "fiem/galerkin.hpp"
#include "fiem/io.hpp"

namespace fiem::app {

namespace {

using nlohmann::json;

template <class T>
void read(const json& j, const char* key, T& into) {
    if (j.contains(key) && !j[key].is_null()) into = j[key].get<T>();
}

template <class T>
void read(const json& j, const char* key, std::optional<T>& into) {
    if (j.contains(key) && !j[key].is_null()) into = j[key].get<T>();
}

bool all_homogeneous(const ScattererUnion& s) {
    return std::all_of(s.parts().begin(), s.parts().end(), [](const IFSAttractor& p) { return p.is_homogeneous(); });
}

}  // namespace

RunConfig config_from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    static const std::vector<std::string> known{"scatterer",  "k",       "theta",  "level",        "h",
                                                "level_max",  "level_ref", "h_ratio", "c_q",        "high_k",
                                                "sampling",   "out",     "deterministic", "memory_budget_gib",
                                                "fundamental_cache", "dump_system"};
    for (const auto& [key, value] : j.items())
        if (std::find(known.begin(), known.end(), key) == known.end()) throw ConfigError("unknown config key '" + key + "'");

    RunConfig c;
    try {
        if (j.contains("scatterer")) {
            c.scatterer = j["scatterer"].is_string() ? scatterer_spec_to_json(j["scatterer"].get<std::string>()) : j["scatterer"];
        }
        read(j, "k", c.k);
        read(j, "theta", c.theta);
        read(j, "level", c.level);
        read(j, "h", c.h);
        read(j, "level_max", c.level_max);
        read(j, "level_ref", c.level_ref);
        read(j, "h_ratio", c.h_ratio);
        read(j, "c_q", c.c_q);
        read(j, "high_k", c.high_k);
        read(j, "out", c.out);
        read(j, "deterministic", c.deterministic);
        read(j, "memory_budget_gib", c.memory_budget_gib);
        read(j, "fundamental_cache", c.fundamental_cache);
        read(j, "dump_system", c.dump_system);
        if (j.contains("sampling")) {
            const auto& s = j["sampling"];
            read(s, "window", c.sampling.window);
            read(s, "per_edge", c.sampling.per_edge);
            read(s, "sphere_radius", c.sampling.sphere_radius);
            read(s, "grid_window", c.sampling.grid_window);
            read(s, "grid_nx", c.sampling.grid_nx);
            read(s, "grid_ny", c.sampling.grid_ny);
            read(s, "grid_z", c.sampling.grid_z);
            read(s, "far_count", c.sampling.far_count);
            read(s, "far_polar", c.sampling.far_polar);
            read(s, "far_azimuth", c.sampling.far_azimuth);
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad config value: ") + e.what());
    }
    return c;
}

json config_to_json(const RunConfig& c) {
    json j;
    j["scatterer"] = c.scatterer;
    j["k"] = c.k;
    j["theta"] = c.theta;
    j["level"] = c.level ? json(*c.level) : json(nullptr);
    j["h"] = c.h ? json(*c.h) : json(nullptr);
    j["level_max"] = c.level_max;
    j["level_ref"] = c.level_ref ? json(*c.level_ref) : json(nullptr);
    j["h_ratio"] = c.h_ratio ? json(*c.h_ratio) : json(nullptr);
    j["c_q"] = c.c_q ? json(*c.c_q) : json(nullptr);
    j["high_k"] = c.high_k;
    j["out"] = c.out;
    j["deterministic"] = c.deterministic;
    j["memory_budget_gib"] = c.memory_budget_gib;
    j["fundamental_cache"] = c.fundamental_cache;
    j["dump_system"] = c.dump_system;
    const auto& s = c.sampling;
    j["sampling"] = {{"window", s.window},       {"per_edge", s.per_edge}, {"sphere_radius", s.sphere_radius},
                     {"grid_window", s.grid_window}, {"grid_nx", s.grid_nx}, {"grid_ny", s.grid_ny},
                     {"grid_z", s.grid_z},       {"far_count", s.far_count}, {"far_polar", s.far_polar},
                     {"far_azimuth", s.far_azimuth}};
    return j;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
    }
    return config_from_json(j);
}

void validate(const RunConfig& c) {
    if (!(c.k > 0.0)) throw ConfigError("k must be positive");
    if (c.level && *c.level < 0) throw ConfigError("level must be >= 0");
    if (c.h && !(*c.h > 0.0)) throw ConfigError("h must be positive");
    if (c.level_max < 0) throw ConfigError("level_max must be >= 0");
    if (c.level_ref && *c.level_ref <= c.level_max) throw ConfigError("level_ref must exceed level_max");
    if (c.h_ratio && !(*c.h_ratio > 0.0 && *c.h_ratio < 1.0)) throw ConfigError("h_ratio must lie in (0, 1)");
    if (c.c_q && !(*c.c_q > 0.0 && *c.c_q <= 1.0)) throw ConfigError("c_q must lie in (0, 1]");
    if (!(c.memory_budget_gib > 0.0)) throw ConfigError("memory_budget_gib must be positive");
    const auto& s = c.sampling;
    if (s.per_edge <= 0 || s.grid_nx <= 0 || s.grid_ny <= 0 || s.far_count <= 0 || s.far_polar <= 0 || s.far_azimuth <= 0)
        throw ConfigError("sampling resolutions must be positive");
    if (s.sphere_radius < 0.0) throw ConfigError("sphere_radius must be >= 0");
    if (!(s.window[1] > s.window[0] && s.window[3] > s.window[2]) ||
        !(s.grid_window[1] > s.grid_window[0] && s.grid_window[3] > s.grid_window[2]))
        throw ConfigError("windows must be [x0, x1, y0, y1] with x0 < x1 and y0 < y1");
    if (c.out.empty()) throw ConfigError("output directory must be set");
}

ScattererUnion make_scatterer(const RunConfig& c) {
    try {
        return scatterer_from_json(c.scatterer);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bad scatterer: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("bad scatterer: ") + e.what());
    }
}

WaveParams make_wave(const RunConfig& c, int dim) {
    Point theta = Point::Zero();
    if (c.theta.empty()) {
        theta(0) = 1.0;
    } else {
        if (static_cast<int>(c.theta.size()) != dim) throw ConfigError("theta must have one entry per ambient dimension");
        for (int i = 0; i < dim; ++i) theta(i) = c.theta[static_cast<std::size_t>(i)];
        const double n = theta.norm();
        if (!(n > 0.0)) throw ConfigError("theta must be nonzero");
        theta /= n;
    }
    try {
        return WaveParams(c.k, theta, dim);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

double resolve_cq(const RunConfig& c, const ScattererUnion& s) { return c.c_q ? *c.c_q : default_cq(s, c.high_k); }

int resolve_level_ref(const RunConfig& c, int dim) { return c.level_ref ? *c.level_ref : c.level_max + (dim == 2 ? 2 : 1); }

Mesh level_mesh(const RunConfig& c, const ScattererUnion& s, int level) {
    if (all_homogeneous(s) && !c.h_ratio) return uniform_mesh(s, level);
    double ratio = 0.0;
    if (c.h_ratio) {
        ratio = *c.h_ratio;
    } else {
        for (const auto& p : s.parts()) ratio = std::max(ratio, p.max_rho());
    }
    return build_mesh(s, s.max_diameter() * std::pow(ratio, level));
}

Mesh solve_mesh(const RunConfig& c, const ScattererUnion& s) {
    if (c.h) return build_mesh(s, *c.h);
    return level_mesh(c, s, c.level.value_or(0));
}

}  // namespace fiem::app
