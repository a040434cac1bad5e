#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "fiem/library.hpp"
#include "fiem/postfield.hpp"

using namespace fiem;

namespace {

DensitySolution solved(const IFSAttractor& ifs, int level, const WaveParams& w) {
    return solve(assemble(uniform_mesh(ifs, level), w, default_cq(ifs)));
}

FieldGrid grid_of(std::vector<cplx> values) {
    FieldGrid g;
    for (std::size_t i = 0; i < values.size(); ++i) g.points.push_back(Point(static_cast<double>(i), 0, 0));
    g.values = std::move(values);
    g.accurate.assign(g.values.size(), true);
    return g;
}

}  // namespace

TEST(RelativeError, Definition) {
    const auto ref = grid_of({{1, 0}, {0, 2}, {-3, 0}});
    EXPECT_EQ(relative_error(ref, ref), 0.0);
    auto twice = ref;
    for (auto& v : twice.values) v *= 2.0;
    EXPECT_DOUBLE_EQ(relative_error(ref, twice), 1.0);
    auto bumped = ref;
    bumped.values[1] += cplx(0.3, 0.4);
    EXPECT_DOUBLE_EQ(relative_error(ref, bumped), 0.5 / 3.0);
    EXPECT_THROW(relative_error(ref, grid_of({{1, 0}})), std::invalid_argument);
    EXPECT_THROW(relative_error(grid_of({{0, 0}}), grid_of({{1, 0}})), std::invalid_argument);
}

TEST(NearField, LinearInTheCoefficients) {
    const WaveParams w(5.0, Point(1, -1, 0).normalized(), 2);
    auto a = solved(library::koch_curve(), 2, w);
    auto b = a;
    b.coeffs = Eigen::VectorXcd::LinSpaced(a.coeffs.size(), 0.0, 1.0);
    auto sum = a;
    sum.coeffs = a.coeffs + b.coeffs;
    const Point x(0.3, 0.9, 0.0);
    EXPECT_LT(std::abs(near_field(sum, x).value - near_field(a, x).value - near_field(b, x).value), 1e-14);
}

TEST(NearField, AccuracyFlagNearTheScatterer) {
    const WaveParams w(5.0, Point(1, 0, 0), 2);
    const auto sol = solved(library::cantor_set(1.0 / 3.0), 2, w);
    EXPECT_TRUE(near_field(sol, Point(0.5, 1.0, 0.0)).accurate);
    const auto close = near_field(sol, Point(0.0, 1e-4, 0.0));
    EXPECT_FALSE(close.accurate);
    EXPECT_TRUE(std::isfinite(close.value.real()));
    const auto t = total_field(sol, Point(0.5, 1.0, 0.0));
    EXPECT_LT(std::abs(t.value - near_field(sol, Point(0.5, 1.0, 0.0)).value - incident_plane_wave(Point(0.5, 1.0, 0.0), w)),
              1e-15);
}

TEST(FarField, ConsistentWithNearFieldAtLargeDistance) {
    for (int dim : {2, 3}) {
        const auto ifs = dim == 2 ? library::koch_curve() : library::cantor_dust(1.0 / 3.0, 3);
        const WaveParams w(dim == 2 ? 5.0 : 2.0, dim == 2 ? Point(1, -1, 0).normalized() : Point(0, 1, -1).normalized(), dim);
        const auto sol = solved(ifs, 2, w);
        const auto dirs = dim == 2 ? circle_directions(12) : sphere_directions(3, 4);
        const auto far = far_field(sol, dirs);
        const double R = 1e3 * ifs.diameter();
        double worst = 0.0, scale = 0.0;
        for (std::size_t i = 0; i < dirs.size(); ++i) {
            const cplx u = near_field(sol, R * dirs[i]).value;
            const cplx decay = dim == 2 ? std::exp(cplx(0, w.k * R)) / std::sqrt(R) : std::exp(cplx(0, w.k * R)) / R;
            worst = std::max(worst, std::abs(u - decay * far.values[i]));
            scale = std::max(scale, std::abs(decay * far.values[i]));
        }
        EXPECT_LT(worst / scale, 1e-2) << dim;
    }
}

TEST(Fields, InvariantUnderMeasureRescaling) {
    const WaveParams w(5.0, Point(1, -1, 0).normalized(), 2);
    const auto koch = library::koch_curve();
    const auto a = solved(koch, 3, w);
    const auto b = solved(koch.with_measure_total(0.01), 3, w);
    const auto dirs = circle_directions(16);
    EXPECT_LT(relative_error(far_field(a, dirs), far_field(b, dirs)), 1e-12);
    const auto pts = square_perimeter(-1, 2, -1.5, 1.5, 5);
    EXPECT_LT(relative_error(near_field(a, pts), near_field(b, pts)), 1e-12);
}

TEST(SampleSets, CountsAndGeometry) {
    const auto sq = square_perimeter(-1, 2, -1.5, 1.5, 50);
    EXPECT_EQ(sq.size(), 200u);
    for (const auto& p : sq) {
        const bool on_x = std::abs(p(0) + 1) < 1e-15 || std::abs(p(0) - 2) < 1e-15;
        const bool on_y = std::abs(p(1) + 1.5) < 1e-15 || std::abs(p(1) - 1.5) < 1e-15;
        EXPECT_TRUE(on_x || on_y);
    }
    const auto sphere = sphere_directions(10, 20);
    EXPECT_EQ(sphere.size(), 200u);
    for (const auto& d : sphere) EXPECT_NEAR(d.norm(), 1.0, 1e-15);
    const auto circle = circle_directions(50);
    EXPECT_EQ(circle.size(), 50u);
    EXPECT_LT((circle[0] - Point(1, 0, 0)).norm(), 1e-15);
    EXPECT_EQ(rectangle_grid(0, 1, 0, 2, 3, 4).size(), 12u);
}

TEST(FieldCsv, Headers) {
    const WaveParams w(5.0, Point(1, 0, 0), 2);
    const auto sol = solved(library::cantor_set(1.0 / 3.0), 1, w);
    std::ostringstream near, far;
    write_field_csv(near_field(sol, rectangle_grid(0, 1, 1, 2, 2, 2), true), near);
    write_field_csv(far_field(sol, circle_directions(4)), far);
    EXPECT_EQ(near.str().substr(0, near.str().find('\n')), "x,y,re,im,accurate");
    EXPECT_EQ(far.str().substr(0, far.str().find('\n')), "angle,re,im,accurate");
    const WaveParams w3(2.0, Point(0, 0, 1), 3);
    const auto sol3 = solved(library::cantor_dust(1.0 / 3.0, 3), 0, w3);
    std::ostringstream far3;
    write_field_csv(far_field(sol3, sphere_directions(2, 2)), far3);
    EXPECT_EQ(far3.str().substr(0, far3.str().find('\n')), "polar,azimuth,re,im,accurate");
}
