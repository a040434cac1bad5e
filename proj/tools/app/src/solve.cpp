#include <chrono>
#include <numbers>
#include <ostream>
#include <sstream>

#include "fiem/app/commands.hpp"
#include "fiem/app/output.hpp"
#include "fiem/io.hpp"

namespace fiem::app {

namespace {

using clock_type = std::chrono::steady_clock;

double since(clock_type::time_point t0) { return std::chrono::duration<double>(clock_type::now() - t0).count(); }

template <class Write>
std::string to_text(Write&& write) {
    std::ostringstream s;
    write(s);
    return s.str();
}

nlohmann::json metadata(const RunConfig& config, const ScattererUnion& scatterer, const SolveRun& run) {
    const auto& sol = run.solution;
    nlohmann::json j;
    j["scatterer_hash"] = scatterer_hash(scatterer);
    j["attractor_hashes"] = nlohmann::json::array();
    for (const auto& p : scatterer.parts()) j["attractor_hashes"].push_back(attractor_hash(p));
    j["N"] = sol.mesh.size();
    j["h"] = sol.mesh.h();
    j["h_Q"] = sol.h_q;
    j["c_q"] = run.c_q;
    j["residual"] = sol.residual;
    j["singular_pairs"] = run.singular_pairs;
    j["k"] = sol.wave.k;
    j["timings"] = {{"mesh", run.timings.mesh},
                    {"assemble", run.timings.assemble},
                    {"solve", run.timings.solve},
                    {"fields", run.timings.fields}};
    j["config"] = config_to_json(config);
    return j;
}

}  // namespace

SolveRun run_solve(const RunConfig& config, const ScattererUnion& scatterer, const Mesh& mesh) {
    const double c_q = resolve_cq(config, scatterer);
    const auto wave = make_wave(config, scatterer.ambient_dim());
    FundamentalSource source;
    if (!config.fundamental_cache.empty()) source = cached_fundamentals(config.fundamental_cache);
    Timings timings;
    auto t0 = clock_type::now();
    const auto system = assemble(mesh, wave, c_q, source);
    timings.assemble = since(t0);
    if (config.dump_system)
        write_atomic(std::filesystem::path(config.out) / "system.bin",
                     to_text([&](std::ostream& s) { write_system_binary(system, s); }));
    t0 = clock_type::now();
    auto solution = solve(system);
    timings.solve = since(t0);
    return {std::move(solution), system.singular_pairs, c_q, timings};
}

std::vector<Point> study_points(const RunConfig& config, const ScattererUnion& scatterer) {
    const auto& s = config.sampling;
    if (scatterer.ambient_dim() == 2) return square_perimeter(s.window[0], s.window[1], s.window[2], s.window[3], s.per_edge);
    const double radius = s.sphere_radius > 0.0 ? s.sphere_radius : 2.0 * scatterer.max_diameter();
    const Point centre = scatterer.part(0).barycentre();
    std::vector<Point> out;
    for (const auto& d : sphere_directions(s.far_polar, s.far_azimuth)) out.push_back(centre + radius * d);
    return out;
}

std::vector<Point> far_directions(const RunConfig& config, int dim) {
    const auto& s = config.sampling;
    return dim == 2 ? circle_directions(s.far_count) : sphere_directions(s.far_polar, s.far_azimuth);
}

std::vector<Point> grid_points(const RunConfig& config, int dim) {
    const auto& s = config.sampling;
    auto pts = rectangle_grid(s.grid_window[0], s.grid_window[1], s.grid_window[2], s.grid_window[3], s.grid_nx, s.grid_ny);
    if (dim == 3)
        for (auto& p : pts) p(2) = s.grid_z;
    return pts;
}

namespace {

struct Prepared {
    ScattererUnion scatterer;
    Mesh mesh;
    double mesh_seconds;
};

Prepared prepare(const RunConfig& config, std::ostream& log) {
    validate(config);
    auto scatterer = make_scatterer(config);
    make_wave(config, scatterer.ambient_dim());  // reject a bad theta before meshing
    const auto t0 = clock_type::now();
    auto mesh = solve_mesh(config, scatterer);
    const double seconds = since(t0);
    warn_memory(mesh.size(), config.memory_budget_gib, log);
    return {std::move(scatterer), std::move(mesh), seconds};
}

void write_fields(const RunConfig& config, const DensitySolution& sol, bool scattered_grid, Timings& timings) {
    namespace fs = std::filesystem;
    const fs::path out(config.out);
    const int dim = sol.mesh.ambient_dim();
    const auto t0 = clock_type::now();
    const auto grid = grid_points(config, dim);
    const auto total = near_field(sol, grid, true);
    const auto far = far_field(sol, far_directions(config, dim));
    write_atomic(out / "field_total.csv", to_text([&](std::ostream& s) { write_field_csv(total, s); }));
    if (scattered_grid) {
        const auto scattered = near_field(sol, grid, false);
        write_atomic(out / "field_scattered.csv", to_text([&](std::ostream& s) { write_field_csv(scattered, s); }));
    }
    write_atomic(out / "farfield.csv", to_text([&](std::ostream& s) { write_field_csv(far, s); }));
    timings.fields = since(t0);
}

}  // namespace

int cmd_solve(const RunConfig& config, std::ostream& log) {
    namespace fs = std::filesystem;
    auto prep = prepare(config, log);
    auto run = run_solve(config, prep.scatterer, prep.mesh);
    run.timings.mesh = prep.mesh_seconds;
    const fs::path out(config.out);
    write_atomic(out / "mesh.csv", mesh_csv(prep.mesh));
    write_atomic(out / "coefficients.csv",
                 to_text([&](std::ostream& s) { write_coefficients_csv(run.solution, s); }));
    write_fields(config, run.solution, false, run.timings);
    write_atomic(out / "run.json", metadata(config, prep.scatterer, run).dump(2) + "\n");
    log << "solve: N = " << prep.mesh.size() << ", h_Q = " << run.solution.h_q << ", residual = " << run.solution.residual
        << ", outputs in " << out.string() << "\n";
    return exit_ok;
}

int cmd_field(const RunConfig& config, std::ostream& log) {
    namespace fs = std::filesystem;
    auto prep = prepare(config, log);
    auto run = run_solve(config, prep.scatterer, prep.mesh);
    run.timings.mesh = prep.mesh_seconds;
    write_fields(config, run.solution, true, run.timings);
    write_atomic(fs::path(config.out) / "run.json", metadata(config, prep.scatterer, run).dump(2) + "\n");
    log << "field: N = " << prep.mesh.size() << ", grid " << config.sampling.grid_nx << " x " << config.sampling.grid_ny
        << ", outputs in " << config.out << "\n";
    return exit_ok;
}

}  // namespace fiem::app
