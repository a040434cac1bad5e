#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "fiem/app/commands.hpp"
#include "fiem/app/output.hpp"
#include "fiem/io.hpp"

using namespace fiem;
using namespace fiem::app;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

std::size_t rows(const fs::path& p) {
    const auto text = slurp(p);
    return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')) - 1;
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("fiem_test_" + name);
    fs::remove_all(dir);
    return dir;
}

RunConfig cantor_config(const fs::path& out, int level) {
    RunConfig c;
    c.scatterer = scatterer_spec_to_json("cantor_set:rho=0.3333333333333333");
    c.k = 5.0;
    c.level = level;
    c.out = out.string();
    c.sampling.grid_nx = 7;
    c.sampling.grid_ny = 5;
    return c;
}

}  // namespace

TEST(Config, ParsesAndValidates) {
    const auto c = config_from_json(nlohmann::json::parse(R"({
        "scatterer": "koch_curve", "k": 3, "theta": [1, -1], "level_max": 3, "level_ref": 5,
        "sampling": {"per_edge": 10, "far_count": 20}
    })"));
    EXPECT_EQ(c.scatterer["library"], "koch_curve");
    EXPECT_EQ(c.level_max, 3);
    EXPECT_EQ(resolve_level_ref(c, 2), 5);
    EXPECT_NO_THROW(validate(c));
    const auto w = make_wave(c, 2);
    EXPECT_NEAR(w.theta(0), std::sqrt(0.5), 1e-15);

    EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"wavenumber": 3})")), ConfigError);
    EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"k": "three"})")), ConfigError);
    RunConfig bad = c;
    bad.level_ref = 3;
    EXPECT_THROW(validate(bad), ConfigError);
    bad = c;
    bad.sampling.per_edge = 0;
    EXPECT_THROW(validate(bad), ConfigError);
    bad = c;
    bad.c_q = 2.0;
    EXPECT_THROW(validate(bad), ConfigError);
    EXPECT_THROW(make_wave(c, 3), ConfigError);

    RunConfig defaults;
    EXPECT_EQ(resolve_level_ref(defaults, 2), defaults.level_max + 2);
    EXPECT_EQ(resolve_level_ref(defaults, 3), defaults.level_max + 1);
    const auto round = config_from_json(config_to_json(c));
    EXPECT_EQ(config_to_json(round), config_to_json(c));
}

TEST(Solve, CantorLevelThreeArtifacts) {
    const auto out = scratch("solve3");
    std::ostringstream log;
    ASSERT_EQ(cmd_solve(cantor_config(out, 3), log), exit_ok);
    EXPECT_EQ(rows(out / "coefficients.csv"), 8u);
    EXPECT_EQ(rows(out / "mesh.csv"), 8u);
    EXPECT_EQ(rows(out / "field_total.csv"), 35u);
    EXPECT_EQ(rows(out / "farfield.csv"), 50u);
    const auto meta = nlohmann::json::parse(slurp(out / "run.json"));
    EXPECT_EQ(meta["N"], 8);
    EXPECT_LE(meta["residual"].get<double>(), 1e-10);
    EXPECT_EQ(meta["attractor_hashes"][0], attractor_hash(scatterer_from_json(scatterer_spec_to_json("cantor_set:rho=0.3333333333333333")).part(0)));
    for (const auto& e : fs::directory_iterator(out)) EXPECT_NE(e.path().extension(), ".tmp");
}

TEST(Solve, SmallestRun) {
    const auto out = scratch("solve0");
    std::ostringstream log;
    ASSERT_EQ(cmd_solve(cantor_config(out, 0), log), exit_ok);
    EXPECT_EQ(rows(out / "coefficients.csv"), 1u);
    EXPECT_TRUE(nlohmann::json::parse(slurp(out / "run.json")).contains("timings"));
}

TEST(Solve, SnowflakeBoundaryUnion) {
    const auto out = scratch("snowunion");
    auto c = cantor_config(out, 2);
    c.scatterer = {{"library", "koch_snowflake_boundary"}};
    std::ostringstream log;
    ASSERT_EQ(cmd_solve(c, log), exit_ok);
    std::ifstream in(out / "mesh.csv");
    std::string line;
    std::getline(in, line);
    std::vector<int> per_block(3, 0);
    while (std::getline(in, line)) ++per_block.at(static_cast<std::size_t>(std::stoi(line.substr(0, line.find(',')))));
    EXPECT_EQ(per_block, (std::vector<int>{16, 16, 16}));
}

TEST(Solve, DeterministicOutput) {
    const auto a = scratch("det_a"), b = scratch("det_b");
    std::ostringstream log;
    auto ca = cantor_config(a, 3), cb = cantor_config(b, 3);
    ca.scatterer = cb.scatterer = {{"library", "koch_curve"}};
    ASSERT_EQ(cmd_solve(ca, log), exit_ok);
    ASSERT_EQ(cmd_solve(cb, log), exit_ok);
    for (const char* f : {"mesh.csv", "coefficients.csv", "field_total.csv", "farfield.csv"})
        EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
}

TEST(Solve, FundamentalCacheIsReused) {
    const auto out = scratch("cache");
    auto c = cantor_config(out / "run", 2);
    c.scatterer = {{"library", "koch_curve"}};
    c.fundamental_cache = (out / "cache").string();
    const auto scatterer = make_scatterer(c);
    const auto mesh = solve_mesh(c, scatterer);
    const auto first = run_solve(c, scatterer, mesh);
    std::size_t files = 0;
    for ([[maybe_unused]] const auto& e : fs::directory_iterator(out / "cache")) ++files;
    EXPECT_EQ(files, 1u);
    const auto second = run_solve(c, scatterer, mesh);
    EXPECT_TRUE(first.solution.coeffs == second.solution.coeffs);
    RunConfig plain = c;
    plain.fundamental_cache.clear();
    EXPECT_TRUE(run_solve(plain, scatterer, mesh).solution.coeffs == first.solution.coeffs);
}

TEST(Field, WritesBothGrids) {
    const auto out = scratch("field");
    std::ostringstream log;
    ASSERT_EQ(cmd_field(cantor_config(out, 2), log), exit_ok);
    EXPECT_EQ(rows(out / "field_scattered.csv"), 35u);
    EXPECT_EQ(rows(out / "field_total.csv"), 35u);
}

TEST(Converge, ReportStructureAndTrend) {
    const auto out = scratch("converge");
    auto c = cantor_config(out, 0);
    c.theta = {1.0, -1.0};
    c.level_max = 4;
    c.level_ref = 6;
    c.sampling.per_edge = 10;
    c.sampling.far_count = 20;
    const auto report = run_convergence(c);
    ASSERT_EQ(report.levels.size(), 5u);
    EXPECT_EQ(report.reference.level, 6);
    EXPECT_EQ(report.reference.n, 64u);
    for (std::size_t l = 0; l < report.levels.size(); ++l) {
        EXPECT_EQ(report.levels[l].n, std::size_t{1} << l);
        EXPECT_GE(report.levels[l].far_error, 0.0);
    }
    // increments non-increasing from level 2 on; the last level has no successor
    for (std::size_t l = 2; l + 1 < report.levels.size(); ++l)
        if (report.levels[l + 1].far_increment >= 0.0)
            EXPECT_LE(report.levels[l + 1].far_increment, report.levels[l].far_increment);
    EXPECT_LT(report.levels.back().far_increment, 0.0);
    EXPECT_GT(report.far_error_ratio, 1.0);

    std::ostringstream log;
    ASSERT_EQ(cmd_converge(c, log), exit_ok);
    const auto csv = slurp(out / "convergence.csv");
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "level,N,h,near_rel_error,far_rel_error,near_increment,far_increment,residual,seconds");
    EXPECT_NE(csv.find("# far_error_ratio,"), std::string::npos);
}

TEST(Converge, ReferenceRowHasZeroError) {
    auto c = cantor_config(scratch("conv_ref"), 0);
    c.level_max = 1;
    c.level_ref = 2;
    c.sampling.per_edge = 4;
    c.sampling.far_count = 8;
    const auto report = run_convergence(c);
    EXPECT_EQ(report.reference.near_error, 0.0);
    EXPECT_EQ(report.reference.far_error, 0.0);
    // level 1 has the reference as its successor
    EXPECT_GE(report.levels[1].far_increment, 0.0);
}

TEST(Output, MemoryGuardAndAtomicWrite) {
    std::ostringstream log;
    EXPECT_FALSE(warn_memory(1000, 2.0, log));
    EXPECT_TRUE(warn_memory(16384, 2.0, log));
    EXPECT_NE(log.str().find("warning"), std::string::npos);
    const auto dir = scratch("atomic");
    write_atomic(dir / "a.txt", "one");
    write_atomic(dir / "a.txt", "two");
    EXPECT_EQ(slurp(dir / "a.txt"), "two");
    EXPECT_FALSE(fs::exists(dir / "a.txt.tmp"));
}

TEST(Selftest, KochDecompositionIdentity) {
    EXPECT_LT(koch_decomposition_residual(koch_fundamental(0.0, std::pow(3.0, -4))), 1e-12);
    EXPECT_LT(koch_decomposition_residual(koch_fundamental(1.0, std::pow(3.0, -4))), 1e-12);
}
