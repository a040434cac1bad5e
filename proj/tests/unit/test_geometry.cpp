#include <cmath>

#include <gtest/gtest.h>

#include "fiem/geometry.hpp"
#include "fiem/library.hpp"

using namespace fiem;

TEST(Contact, KochNeighboursTouchAndOthersSeparate) {
    const auto koch = library::koch_curve();
    EXPECT_TRUE(elements_touch(koch, {1}, {2}));
    EXPECT_TRUE(elements_touch(koch, {2}, {3}));
    EXPECT_TRUE(elements_touch(koch, {1, 4}, {2, 1}));
    EXPECT_FALSE(elements_touch(koch, {1}, {3}));
    EXPECT_FALSE(elements_touch(koch, {1}, {4}));
    EXPECT_FALSE(elements_touch(koch, {1, 3}, {2, 1}));
    EXPECT_TRUE(elements_touch(koch, {1}, {1, 2}));
}

TEST(Contact, SnowflakeContactGraph) {
    const auto snow = library::koch_snowflake();
    for (int j = 2; j <= 7; ++j) EXPECT_TRUE(elements_touch(snow, {1}, {j})) << j;
    for (int j = 2; j <= 7; ++j) {
        const int next = j == 7 ? 2 : j + 1;
        EXPECT_TRUE(elements_touch(snow, {j}, {next})) << j;
        const int opposite = (j - 2 + 3) % 6 + 2;
        EXPECT_FALSE(elements_touch(snow, {j}, {opposite})) << j;
    }
}

TEST(Contact, CantorCopiesAreSeparated) {
    const auto c = library::cantor_set(1.0 / 3.0);
    const auto res = classify_contact(c, c.map(1), c.map(2));
    EXPECT_EQ(res.contact, Contact::separated);
    EXPECT_NEAR(res.distance.hi, 1.0 / 3.0, 1e-12);
    EXPECT_LE(res.distance.lo, 1.0 / 3.0 + 1e-12);
}

TEST(HullDistance, Segments) {
    const std::vector<Point> a{Point(0, 0, 0), Point(1, 0, 0)};
    const std::vector<Point> b{Point(0, 2, 0), Point(1, 3, 0)};
    const auto d = hull_distance(a, b);
    EXPECT_NEAR(d.lo, 2.0, 1e-9);
    EXPECT_NEAR(d.hi, 2.0, 1e-9);
    const std::vector<Point> c{Point(0.5, -1, 0), Point(0.5, 1, 0)};
    EXPECT_NEAR(hull_distance(a, c).hi, 0.0, 1e-12);
}

TEST(Disjointness, LibraryDeclarationsAreConsistent) {
    for (const auto& ifs : {library::cantor_set(1.0 / 3.0), library::cantor_dust(1.0 / 3.0, 2),
                            library::cantor_dust(1.0 / 3.0, 3), library::sierpinski_tetrahedron(3.0 / 8.0),
                            library::koch_curve(), library::koch_snowflake()}) {
        EXPECT_TRUE(check_disjointness(ifs, 5).consistent) << ifs.name();
    }
}

TEST(Disjointness, WrongDeclarationIsRejected) {
    const auto koch = library::koch_curve();
    AttractorOptions opt;
    opt.diameter = 1.0;
    opt.disjointness = Disjointness::disjoint;
    const IFSAttractor claimed(koch.maps(), 2, opt);
    EXPECT_FALSE(check_disjointness(claimed, 5).consistent);
    const auto half = library::sierpinski_tetrahedron(0.5);
    EXPECT_EQ(half.disjointness(), Disjointness::non_disjoint);
}

TEST(DistanceToCloud, PointsOnAndOffTheSet) {
    const auto koch = library::koch_curve();
    EXPECT_LT(distance_to_cloud(koch, Point(0.5, 0.5 / std::sqrt(3.0), 0.0)), 1e-15);
    // nearest points are (1/3, 0) and (2/3, 0)
    EXPECT_NEAR(distance_to_cloud(koch, Point(0.5, -1.0, 0.0)), std::sqrt(1.0 + 1.0 / 36.0), 1e-12);
}
