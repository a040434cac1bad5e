#pragma once

// Subcommands of the fiem driver. Each returns a process exit code.

#include <iosfwd>
#include <string>
#include <vector>

#include "fiem/app/config.hpp"
#include "fiem/postfield.hpp"

namespace fiem::app {

enum ExitCode : int { exit_ok = 0, exit_config = 2, exit_numerical = 3 };

struct Timings {
    double mesh = 0.0;
    double assemble = 0.0;
    double solve = 0.0;
    double fields = 0.0;
};

struct SolveRun {
    DensitySolution solution;
    std::size_t singular_pairs = 0;
    double c_q = 0.0;
    Timings timings;
};

SolveRun run_solve(const RunConfig& config, const ScattererUnion& scatterer, const Mesh& mesh);

/// Near-field points of convergence studies: the square perimeter in 2D, a
/// sphere about the barycentre of the first part in 3D.
std::vector<Point> study_points(const RunConfig& config, const ScattererUnion& scatterer);
std::vector<Point> far_directions(const RunConfig& config, int dim);
std::vector<Point> grid_points(const RunConfig& config, int dim);

struct LevelResult {
    int level = 0;
    std::size_t n = 0;
    double h = 0.0;
    double near_error = 0.0;      ///< relative to the reference level
    double far_error = 0.0;
    double near_increment = -1.0; ///< max |u_l - u_{l+1}|; -1 when l+1 was not run
    double far_increment = -1.0;
    double residual = 0.0;
    double seconds = 0.0;
};

struct ConvergenceReport {
    std::vector<LevelResult> levels;  ///< l = 0..level_max
    LevelResult reference;
    double far_error_ratio = 0.0;      ///< e_{lmax-1} / e_{lmax}
    double near_error_ratio = 0.0;
    double far_increment_ratio = 0.0;  ///< over the last two available increments
    double near_increment_ratio = 0.0;
};

ConvergenceReport run_convergence(const RunConfig& config, std::ostream* log = nullptr);

/// Columns level,N,h,near_rel_error,far_rel_error,near_increment,far_increment,
/// residual,seconds; the reference level is the last row; then a comment
/// line per fitted ratio.
void write_convergence_csv(const ConvergenceReport& report, std::ostream& out);
nlohmann::json convergence_json(const ConvergenceReport& report);

struct SelftestRow {
    std::string name;
    double value = 0.0;
    double reference = 0.0;
    double error = 0.0;  ///< relative
    double tolerance = 0.0;
    bool pass = false;
};

/// Singular quadrature checks: Koch closed forms against the similarity
/// engine, the decomposition identity and the brute-force oracle; disjoint
/// self-energies against the oracle.
std::vector<SelftestRow> quad_selftest();

/// Relative mismatch of I_{Gamma,Gamma}, I_{1,2}, I_{2,3} against the sums of
/// their 16 sub-pairs evaluated from `koch` (singular pairs resolved by
/// similarity, the rest by tensor barycentre rules). Returns the largest.
double koch_decomposition_residual(const FundamentalSet& koch);

int cmd_solve(const RunConfig& config, std::ostream& log);
int cmd_field(const RunConfig& config, std::ostream& log);
int cmd_converge(const RunConfig& config, std::ostream& log);
int cmd_quad_selftest(std::ostream& log);

}  // namespace fiem::app
