#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "fiem/galerkin.hpp"
#include "fiem/library.hpp"

using namespace fiem;

namespace {

const WaveParams wave2(5.0, Point(1, -1, 0).normalized(), 2);

}  // namespace

TEST(Assemble, MatrixIsExactlySymmetric) {
    for (const auto& ifs : {library::cantor_set(1.0 / 3.0), library::koch_curve()}) {
        const auto sys = assemble(uniform_mesh(ifs, 3), wave2, 1.0 / 9.0);
        EXPECT_TRUE(sys.A == sys.A.transpose()) << ifs.name();
    }
    const auto snow = assemble(build_mesh(library::koch_snowflake(), 0.3), wave2, 1.0 / 3.0);
    EXPECT_TRUE(snow.A == snow.A.transpose());
}

TEST(Assemble, SingleElementSystem) {
    const auto sys = assemble(uniform_mesh(library::cantor_set(1.0 / 3.0), 0), wave2, 1.0 / 9.0);
    EXPECT_EQ(sys.A.rows(), 1);
    EXPECT_EQ(sys.singular_pairs, 1u);
    const auto sol = solve(sys);
    EXPECT_LT(sol.residual, 1e-14);
}

TEST(Assemble, SingularPairsFollowContact) {
    // disjoint: only the diagonal; Koch: diagonal plus touching neighbours
    EXPECT_EQ(assemble(uniform_mesh(library::cantor_set(1.0 / 3.0), 3), wave2, 1.0 / 9.0).singular_pairs, 8u);
    EXPECT_EQ(assemble(uniform_mesh(library::koch_curve(), 2), wave2, 1.0 / 9.0).singular_pairs, 16u + 15u);
}

TEST(Assemble, RightHandSideSymmetryOfCantorSet) {
    // x -> 1 - x maps (1) onto (2) and reverses theta = (1, 0)
    const WaveParams w(5.0, Point(1, 0, 0), 2);
    const auto sys = assemble(uniform_mesh(library::cantor_set(1.0 / 3.0), 1), w, 1.0 / 9.0);
    EXPECT_NEAR(std::abs(sys.b(0)), std::abs(sys.b(1)), 1e-14);
    EXPECT_LT(std::abs(sys.A(0, 0) - sys.A(1, 1)), 1e-14);
}

TEST(Assemble, MeasureRescaling) {
    const double c = 4.0;
    const auto koch = library::koch_curve();
    const auto a = assemble(uniform_mesh(koch, 2), wave2, 1.0 / 9.0);
    const auto b = assemble(uniform_mesh(koch.with_measure_total(c), 2), wave2, 1.0 / 9.0);
    EXPECT_LT((b.A - c * a.A).norm(), 1e-12 * (c * a.A).norm());
    EXPECT_LT((b.b - std::sqrt(c) * a.b).norm(), 1e-12 * a.b.norm());
    const auto sa = solve(a), sb = solve(b);
    EXPECT_LT((sb.coeffs - sa.coeffs / std::sqrt(c)).norm(), 1e-12 * sa.coeffs.norm());
}

TEST(Assemble, Validation) {
    const auto mesh = uniform_mesh(library::cantor_set(1.0 / 3.0), 1);
    EXPECT_THROW(assemble(mesh, wave2, 0.0), std::invalid_argument);
    EXPECT_THROW(assemble(mesh, wave2, 1.5), std::invalid_argument);
    EXPECT_THROW(assemble(mesh, WaveParams(1.0, Point(0, 0, 1), 3), 0.1), std::invalid_argument);
}

TEST(DefaultCq, MaxRatioSquaredOrFourthPower) {
    const ScattererUnion snow(library::koch_snowflake());
    EXPECT_NEAR(default_cq(snow), 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(default_cq(snow, true), 1.0 / 9.0, 1e-15);
    EXPECT_NEAR(default_cq(library::cantor_set(1.0 / 3.0)), 1.0 / 9.0, 1e-15);
}

TEST(Solve, ResidualAndSingularDetection) {
    const auto sys = assemble(uniform_mesh(library::cantor_set(1.0 / 3.0), 3), wave2, 1.0 / 9.0);
    const auto sol = solve(sys);
    EXPECT_EQ(sol.coeffs.size(), 8);
    EXPECT_LE(sol.residual, 1e-10);

    Eigen::MatrixXcd singular = Eigen::MatrixXcd::Ones(3, 3);
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Ones(3);
    EXPECT_THROW(solve_dense(singular, rhs), SingularMatrix);
    EXPECT_THROW(solve_dense(Eigen::MatrixXcd::Identity(2, 2), rhs), std::invalid_argument);
}

TEST(Solve, RhsQuadratureConverges) {
    const auto koch = library::koch_curve();
    const auto mesh = uniform_mesh(koch, 1);
    auto rhs = [&](double c_q) { return assemble(mesh, wave2, c_q).b; };
    const auto b1 = rhs(1.0 / 9.0), b2 = rhs(1.0 / 27.0), b3 = rhs(1.0 / 81.0);
    const double r = (b1 - b2).norm() / (b2 - b3).norm();
    EXPECT_NEAR(r, 9.0, 1.5);
}

TEST(BoundaryResidual, ZeroDataZeroResidual) {
    const auto sys = assemble(uniform_mesh(library::cantor_set(1.0 / 3.0), 2), wave2, 1.0 / 9.0);
    DensitySolution zero{Eigen::VectorXcd::Zero(4), sys.mesh, sys.wave, sys.h_q, 0.0};
    EXPECT_EQ(boundary_residual(zero, 4, 0.0), 0.0);
    EXPECT_GT(boundary_residual(zero, 4, 1.0), 0.9);
}

TEST(BoundaryResidual, DecreasesWithLevel) {
    const auto c = library::cantor_set(1.0 / 3.0);
    double previous = 1e300;
    for (int level = 1; level <= 3; ++level) {
        const auto sol = solve(assemble(uniform_mesh(c, level), wave2, 1.0 / 9.0));
        const double r = boundary_residual(sol, 5);
        EXPECT_LT(r, previous);
        previous = r;
    }
}

TEST(SystemDump, BinaryRoundTrip) {
    const auto sys = assemble(uniform_mesh(library::koch_curve(), 1), wave2, 1.0 / 9.0);
    std::stringstream buf;
    write_system_binary(sys, buf);
    Eigen::MatrixXcd A;
    Eigen::VectorXcd b;
    read_system_binary(buf, A, b);
    EXPECT_TRUE(A == sys.A);
    EXPECT_TRUE(b == sys.b);
}
