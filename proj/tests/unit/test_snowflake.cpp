// Solid snowflake versus its three boundary Koch curves.

#include <cmath>

#include <gtest/gtest.h>

#include "fiem/geometry.hpp"
#include "fiem/library.hpp"
#include "fiem/postfield.hpp"

using namespace fiem;

namespace {

const WaveParams wave(5.0, Point(1, -1, 0).normalized(), 2);

struct Solved {
    std::size_t n;
    FieldGrid far;
    FieldGrid inside;
};

std::vector<Point> interior_points() {
    const Point c = library::koch_snowflake_centre();
    return {c, c + Point(0.15, 0, 0), c + Point(0, 0.15, 0)};
}

Solved run(const Mesh& mesh) {
    const auto sol = solve(assemble(mesh, wave, default_cq(mesh.scatterer())));
    return {mesh.size(), far_field(sol, circle_directions(50)), near_field(sol, interior_points(), true)};
}

Mesh volume_mesh(int level) {
    const ScattererUnion snow(library::koch_snowflake());
    return build_mesh(snow, snow.max_diameter() * std::pow(1.0 / std::sqrt(3.0), level));
}

Mesh boundary_mesh(int level) { return uniform_mesh(ScattererUnion(library::koch_snowflake_boundary()), level); }

}  // namespace

TEST(Snowflake, BoundaryCurvesLieOnTheSolidSnowflake) {
    // distance to the depth-n cloud must shrink at least like the largest depth-n cylinder
    const auto snow = library::koch_snowflake();
    double previous = 1e300;
    for (int depth : {4, 6, 8}) {
        double worst = 0.0;
        for (const auto& edge : library::koch_snowflake_boundary())
            for (const auto& p : point_cloud(edge, 3)) worst = std::max(worst, distance_to_cloud(snow, p, depth));
        EXPECT_LE(worst, snow.diameter() * std::pow(snow.max_rho(), depth)) << depth;
        EXPECT_LT(worst, previous / 2.0);
        previous = worst;
    }
    // the centre is interior: every corner copy is at distance >= 1/3 of the tip radius
    EXPECT_GT(distance_to_cloud(ScattererUnion(library::koch_snowflake_boundary()).part(0), library::koch_snowflake_centre()),
              0.2);
}

TEST(Snowflake, BoundaryApproachBeatsVolumeApproachAtMatchedN) {
    std::vector<Solved> volume, boundary;
    for (int l = 1; l <= 5; ++l) volume.push_back(run(volume_mesh(l)));
    for (int l = 1; l <= 4; ++l) boundary.push_back(run(boundary_mesh(l)));
    // both approaches are measured against the finest boundary solve
    const auto& ref = boundary.back().far;

    for (std::size_t i = 0; i + 1 < boundary.size(); ++i) {
        // volume mesh with N closest to the boundary N on a log scale
        std::size_t best = 0;
        for (std::size_t j = 0; j < volume.size(); ++j)
            if (std::abs(std::log(double(volume[j].n) / boundary[i].n)) < std::abs(std::log(double(volume[best].n) / boundary[i].n)))
                best = j;
        const double eb = relative_error(ref, boundary[i].far);
        const double ev = relative_error(ref, volume[best].far);
        EXPECT_LE(eb, ev) << "boundary N = " << boundary[i].n << ", volume N = " << volume[best].n;
    }

    // shadow: the total field inside the closed boundary is small once resolved
    for (const auto& v : boundary[2].inside.values) EXPECT_LT(std::abs(v), 0.5);
    for (std::size_t i = 0; i < boundary[2].inside.values.size(); ++i) EXPECT_TRUE(boundary[2].inside.accurate[i]);
    for (const auto& v : volume[4].inside.values) EXPECT_LT(std::abs(v), 0.5);
}
