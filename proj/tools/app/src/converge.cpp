#include <chrono>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "fiem/app/commands.hpp"
#include "fiem/app/output.hpp"

namespace fiem::app {

namespace {

struct LevelFields {
    LevelResult result;
    FieldGrid near;
    FieldGrid far;
};

double ratio(double previous, double last) { return last > 0.0 ? previous / last : 0.0; }

}  // namespace

ConvergenceReport run_convergence(const RunConfig& config, std::ostream* log) {
    validate(config);
    const auto scatterer = make_scatterer(config);
    const int dim = scatterer.ambient_dim();
    make_wave(config, dim);
    const int level_ref = resolve_level_ref(config, dim);
    if (level_ref <= config.level_max) throw ConfigError("level_ref must exceed level_max");
    const auto points = study_points(config, scatterer);
    const auto directions = far_directions(config, dim);

    auto run_level = [&](int level) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto mesh = level_mesh(config, scatterer, level);
        if (log) warn_memory(mesh.size(), config.memory_budget_gib, *log);
        const auto run = run_solve(config, scatterer, mesh);
        LevelFields f;
        f.near = near_field(run.solution, points);
        f.far = far_field(run.solution, directions);
        f.result.level = level;
        f.result.n = mesh.size();
        f.result.h = mesh.h();
        f.result.residual = run.solution.residual;
        f.result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (log) *log << "level " << level << ": N = " << f.result.n << ", " << f.result.seconds << " s\n";
        return f;
    };

    std::vector<LevelFields> runs;
    for (int l = 0; l <= config.level_max; ++l) runs.push_back(run_level(l));
    auto ref = run_level(level_ref);

    ConvergenceReport report;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        auto& r = runs[i].result;
        r.near_error = relative_error(ref.near, runs[i].near);
        r.far_error = relative_error(ref.far, runs[i].far);
        const LevelFields* next = nullptr;
        if (i + 1 < runs.size()) next = &runs[i + 1];
        else if (level_ref == r.level + 1) next = &ref;
        if (next) {
            r.near_increment = max_difference(runs[i].near, next->near);
            r.far_increment = max_difference(runs[i].far, next->far);
        }
        report.levels.push_back(r);
    }
    report.reference = ref.result;

    const auto& lv = report.levels;
    if (lv.size() >= 2) {
        report.far_error_ratio = ratio(lv[lv.size() - 2].far_error, lv.back().far_error);
        report.near_error_ratio = ratio(lv[lv.size() - 2].near_error, lv.back().near_error);
    }
    std::vector<const LevelResult*> with_increment;
    for (const auto& r : lv)
        if (r.far_increment >= 0.0) with_increment.push_back(&r);
    if (with_increment.size() >= 2) {
        const auto& a = *with_increment[with_increment.size() - 2];
        const auto& b = *with_increment.back();
        report.far_increment_ratio = ratio(a.far_increment, b.far_increment);
        report.near_increment_ratio = ratio(a.near_increment, b.near_increment);
    }
    return report;
}

void write_convergence_csv(const ConvergenceReport& report, std::ostream& out) {
    out << "level,N,h,near_rel_error,far_rel_error,near_increment,far_increment,residual,seconds\n";
    out << std::setprecision(17);
    auto row = [&](const LevelResult& r) {
        out << r.level << ',' << r.n << ',' << r.h << ',' << r.near_error << ',' << r.far_error << ',';
        if (r.near_increment >= 0.0) out << r.near_increment;
        out << ',';
        if (r.far_increment >= 0.0) out << r.far_increment;
        out << ',' << r.residual << ',' << std::setprecision(6) << r.seconds << std::setprecision(17) << '\n';
    };
    for (const auto& r : report.levels) row(r);
    row(report.reference);
    out << "# far_error_ratio," << report.far_error_ratio << '\n';
    out << "# near_error_ratio," << report.near_error_ratio << '\n';
    out << "# far_increment_ratio," << report.far_increment_ratio << '\n';
    out << "# near_increment_ratio," << report.near_increment_ratio << '\n';
}

nlohmann::json convergence_json(const ConvergenceReport& report) {
    nlohmann::json j;
    j["level_ref"] = report.reference.level;
    j["N_ref"] = report.reference.n;
    j["far_error_ratio"] = report.far_error_ratio;
    j["near_error_ratio"] = report.near_error_ratio;
    j["far_increment_ratio"] = report.far_increment_ratio;
    j["near_increment_ratio"] = report.near_increment_ratio;
    return j;
}

int cmd_converge(const RunConfig& config, std::ostream& log) {
    namespace fs = std::filesystem;
    const auto report = run_convergence(config, &log);
    std::ostringstream csv;
    write_convergence_csv(report, csv);
    write_atomic(fs::path(config.out) / "convergence.csv", csv.str());
    auto summary = convergence_json(report);
    summary["config"] = config_to_json(config);
    write_atomic(fs::path(config.out) / "convergence.json", summary.dump(2) + "\n");
    log << "converge: far-field error ratio " << report.far_error_ratio << ", increment ratio "
        << report.far_increment_ratio << ", outputs in " << config.out << "\n";
    return exit_ok;
}

}  // namespace fiem::app
