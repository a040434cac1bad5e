#include <cmath>

#include <gtest/gtest.h>

#include "fiem/kernels.hpp"
#include "fiem/library.hpp"
#include "fiem/quadrature.hpp"

using namespace fiem;

TEST(BarycentreRule, WeightsSumToElementMeasure) {
    for (const auto& ifs : {library::cantor_set(1.0 / 3.0).with_measure_total(7.0), library::koch_snowflake(),
                            library::sierpinski_tetrahedron(3.0 / 8.0)}) {
        for (const VectorIndex& m : {VectorIndex{}, VectorIndex{2}, VectorIndex{1, 2}}) {
            const auto rule = barycentre_rule(ifs, m, 0.01);
            double sum = 0.0;
            for (double w : rule.weights) sum += w;
            EXPECT_NEAR(sum, ifs.mu_of(m), 1e-12 * ifs.mu_of(m)) << ifs.name();
            for (const auto& p : rule.nodes) EXPECT_LE((p - ifs.barycentre(m)).norm(), ifs.diameter_of(m));
        }
    }
}

TEST(BarycentreRule, ExactForAffineIntegrands) {
    const auto koch = library::koch_curve();
    const Point a(0.7, -1.3, 0.0);
    const double b = 0.4;
    const VectorIndex m{2, 3};
    const double exact = koch.mu_of(m) * (a.dot(koch.barycentre(m)) + b);
    for (double h_q : {1.0, 0.05, 0.003}) {
        const auto rule = barycentre_rule(koch, m, h_q);
        const double approx = integrate(rule, [&](const Point& x) { return a.dot(x) + b; });
        EXPECT_NEAR(approx, exact, 1e-15);
    }
}

TEST(BarycentreRule, OnePointWhenWidthExceedsDiameter) {
    const auto c = library::cantor_set(1.0 / 3.0);
    const auto rule = barycentre_rule(c, {1}, 0.5);
    ASSERT_EQ(rule.size(), 1u);
    EXPECT_LT((rule.nodes[0] - c.barycentre({1})).norm(), 1e-15);
    EXPECT_THROW(barycentre_rule(c, {1}, 0.0), std::invalid_argument);
}

TEST(BarycentreRule, NodesFollowTheSubdivision) {
    const auto c = library::cantor_set(1.0 / 3.0);
    EXPECT_EQ(barycentre_rule(c, {}, std::pow(3.0, -4)).size(), 16u);
    EXPECT_EQ(barycentre_rule(c, {1}, std::pow(3.0, -4)).size(), 8u);
    const auto snow = library::koch_snowflake();
    RuleCache cache(snow);
    const auto cached = cache.rule({3}, 0.05);
    const auto direct = barycentre_rule(snow, {3}, 0.05);
    ASSERT_EQ(cached.size(), direct.size());
    for (std::size_t i = 0; i < cached.size(); ++i) EXPECT_LT((cached.nodes[i] - direct.nodes[i]).norm(), 1e-15);
}

TEST(BarycentreRule, SecondOrderForSmoothIntegrands) {
    const auto koch = library::koch_curve();
    const WaveParams w(5.0, Point(1, -1, 0).normalized(), 2);
    auto f = [&](const Point& x) { return incident_plane_wave(x, w); };
    const cplx ref = integrate(barycentre_rule(koch, {}, std::pow(3.0, -9)), f);
    std::vector<double> errors;
    for (int e = 2; e <= 5; ++e) errors.push_back(std::abs(integrate(barycentre_rule(koch, {}, std::pow(3.0, -e)), f) - ref));
    for (std::size_t i = 1; i < errors.size(); ++i) EXPECT_NEAR(errors[i - 1] / errors[i], 9.0, 1.5);
}

TEST(TensorRule, RegularPairConvergesUnderRefinement) {
    // kernel r^-1 on the disjoint Cantor pair (1), (2); reference at h_Q / 16
    const auto c = library::cantor_set(1.0 / 3.0);
    auto kernel = [](const Point& x, const Point& y) { return phi_tilde((x - y).norm(), 1.0); };
    const double h_q = std::pow(3.0, -4);
    const double ref = double_regular(c, {1}, {2}, h_q / 16.0, kernel);
    double previous = std::abs(double_regular(c, {1}, {2}, 3.0 * h_q, kernel) - ref);
    for (double w : {h_q, h_q / 3.0}) {
        const double e = std::abs(double_regular(c, {1}, {2}, w, kernel) - ref);
        EXPECT_LT(e, previous);
        previous = e;
    }
    EXPECT_LT(previous / std::abs(ref), 1e-4);
}
