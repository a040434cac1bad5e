#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "fiem/geometry.hpp"
#include "fiem/library.hpp"

using namespace fiem;

TEST(Similarity, ComposeAndInverse) {
    const auto s = Similarity::planar(0.4, 0.7, Point(0.3, -0.2, 0.0));
    const auto t = Similarity::planar(0.5, -1.1, Point(1.0, 2.0, 0.0), true);
    const Point x(0.25, 0.75, 0.0);
    EXPECT_LT((s.compose(t)(x) - s(t(x))).norm(), 1e-15);
    EXPECT_LT((s.inverse()(s(x)) - x).norm(), 1e-14);
    EXPECT_LT((s(s.fixed_point()) - s.fixed_point()).norm(), 1e-15);
    EXPECT_DOUBLE_EQ((s * t).rho(), 0.2);
}

TEST(Similarity, RejectsBadMaps) {
    Matrix skew = Matrix::Identity();
    skew(0, 1) = 0.1;
    EXPECT_THROW(Similarity(0.5, skew, Point::Zero()), std::invalid_argument);
    EXPECT_THROW(Similarity(0.0, Matrix::Identity(), Point::Zero()), std::invalid_argument);
}

TEST(VectorIndex, StringsAndPrefixes) {
    const VectorIndex m{1, 4, 2};
    EXPECT_EQ(m.to_string(), "1-4-2");
    EXPECT_EQ(VectorIndex::parse("1-4-2"), m);
    EXPECT_TRUE(VectorIndex::parse("0").is_root());
    EXPECT_EQ(VectorIndex().to_string(), "0");
    EXPECT_TRUE((VectorIndex{1, 4}).is_prefix_of(m));
    EXPECT_EQ(m.parent(), (VectorIndex{1, 4}));
    EXPECT_EQ(m.common_prefix(VectorIndex{1, 4, 3}), 2u);
    EXPECT_EQ((VectorIndex{1}).concat(VectorIndex{2, 3}), (VectorIndex{1, 2, 3}));
}

TEST(Attractor, HausdorffDimensions) {
    EXPECT_NEAR(library::cantor_set(1.0 / 3.0).hausdorff_dim(), std::log(2.0) / std::log(3.0), 1e-15);
    EXPECT_NEAR(library::cantor_dust(1.0 / 3.0, 3).hausdorff_dim(), std::log(8.0) / std::log(3.0), 1e-14);
    EXPECT_NEAR(library::koch_curve().hausdorff_dim(), std::log(4.0) / std::log(3.0), 1e-15);
    EXPECT_NEAR(library::koch_snowflake().hausdorff_dim(), 2.0, 1e-12);
    EXPECT_NEAR(library::sierpinski_tetrahedron(3.0 / 8.0).hausdorff_dim(), std::log(4.0) / std::log(8.0 / 3.0), 1e-14);
    const std::vector<double> rhos{0.5, 0.25, 0.25};
    const double d = hausdorff_dimension(rhos);
    EXPECT_NEAR(std::pow(0.5, d) + 2.0 * std::pow(0.25, d), 1.0, 1e-12);
}

TEST(Attractor, MeasuresOfSubsets) {
    const auto snow = library::koch_snowflake().with_measure_total(3.0);
    double total = 0.0;
    for (int i = 1; i <= 7; ++i)
        for (int j = 1; j <= 7; ++j) total += snow.mu_of(VectorIndex{i, j});
    EXPECT_NEAR(total, 3.0, 1e-13);
    EXPECT_NEAR(snow.mu_of(VectorIndex{1}), 3.0 / 3.0, 1e-14);  // central copy, ratio 1/sqrt(3)
    EXPECT_NEAR(snow.diameter_of(VectorIndex{2, 2}), snow.diameter() / 9.0, 1e-15);
}

TEST(Attractor, Barycentres) {
    EXPECT_LT((library::cantor_set(0.25).barycentre() - Point(0.5, 0, 0)).norm(), 1e-15);
    EXPECT_NEAR(library::koch_curve().barycentre()(0), 0.5, 1e-15);
    EXPECT_LT((library::koch_snowflake().barycentre() - library::koch_snowflake_centre()).norm(), 1e-14);
    const auto dust = library::cantor_dust(1.0 / 3.0, 3);
    EXPECT_LT((dust.barycentre() - Point(0.5, 0.5, 0.5)).norm(), 1e-15);
}

TEST(Attractor, BoundingRadiusContainsCloud) {
    for (const auto& ifs : {library::koch_curve(), library::koch_snowflake(), library::sierpinski_tetrahedron(0.5)}) {
        for (const auto& p : point_cloud(ifs, 4))
            EXPECT_LE((p - ifs.barycentre()).norm(), ifs.bounding_radius() * (1.0 + 1e-12));
    }
}

TEST(Attractor, DiameterBracketContainsAnalyticValue) {
    for (const auto& ifs : {library::cantor_set(1.0 / 3.0), library::koch_curve(), library::koch_snowflake(),
                            library::cantor_dust(0.3, 3), library::sierpinski_tetrahedron(3.0 / 8.0)}) {
        const auto b = diameter_bracket(ifs.maps(), 1e-6);
        EXPECT_LE(b.lo, ifs.diameter() * (1 + 1e-12)) << ifs.name();
        EXPECT_GE(b.hi, ifs.diameter() * (1 - 1e-12)) << ifs.name();
        EXPECT_LT(b.width(), 1e-5) << ifs.name();
    }
}

TEST(Attractor, LiftingEmbedsInThePlaneZEqualsZero) {
    const auto koch = library::koch_curve(true);
    EXPECT_EQ(koch.ambient_dim(), 3);
    EXPECT_NEAR(koch.hausdorff_dim(), std::log(4.0) / std::log(3.0), 1e-15);
    for (const auto& p : point_cloud(koch, 3)) EXPECT_EQ(p(2), 0.0);
    EXPECT_THROW(library::cantor_dust(1.0 / 3.0, 3, true), std::invalid_argument);
}

TEST(Attractor, SymmetriesMapTheAttractorToItself) {
    for (const auto& ifs : {library::cantor_set(1.0 / 3.0), library::cantor_dust(1.0 / 3.0, 3), library::koch_curve(),
                            library::koch_snowflake(), library::sierpinski_tetrahedron(3.0 / 8.0)}) {
        const auto cloud = point_cloud(ifs, 3);
        for (const auto& t : ifs.symmetry_group())
            for (const auto& p : cloud) EXPECT_LT(distance_to_cloud(ifs, t(p), 4), 1e-12) << ifs.name();
    }
}

TEST(Attractor, RejectsInvalidInput) {
    EXPECT_THROW(library::cantor_set(0.6), std::invalid_argument);
    EXPECT_THROW(library::cantor_dust(1.0 / 3.0, 4), std::invalid_argument);
    EXPECT_THROW(IFSAttractor({Similarity(0.5, Matrix::Identity(), Point::Zero())}, 2), std::invalid_argument);
    EXPECT_THROW(library::koch_curve().subattractor(VectorIndex{5}), std::out_of_range);
}
