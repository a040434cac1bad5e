#pragma once

// Geometric predicates on self-similar sets: point clouds, rigorous distance
// brackets between similar copies of an attractor, and convex hull
// separation of finite point sets.

#include <span>
#include <vector>

#include "fiem/ifs.hpp"

namespace fiem {

/// Points {s_w(p) : |w| = depth, p fixed point of some map}; every point lies
/// on the attractor.
std::vector<Point> point_cloud(const IFSAttractor& ifs, int depth, const VectorIndex& root = {});

/// Like point_cloud but with one point per cylinder (image of the barycentre);
/// these need not lie on the attractor.
std::vector<Point> barycentre_cloud(const IFSAttractor& ifs, int depth, const VectorIndex& root = {});

struct DistanceBracket {
    double lo = 0.0;
    double hi = 0.0;
};

enum class Contact { separated, touching, undecided };

struct ContactResult {
    Contact contact = Contact::undecided;
    DistanceBracket distance;
};

/// Decides whether F(Gamma) and G(Gamma) intersect. Separation is certified by
/// bounding balls; contact is declared when points of both sets come within
/// `touch_tol` times the larger set's diameter. Exhausting `max_nodes`
/// returns undecided.
ContactResult classify_contact(const IFSAttractor& ifs, const Similarity& f, const Similarity& g,
                               double touch_tol = 1e-10, std::size_t max_nodes = 200000);

/// Gamma_m intersect Gamma_m' nonempty? Undecided cases count as touching.
bool elements_touch(const IFSAttractor& ifs, const VectorIndex& m, const VectorIndex& mp);

/// Distance from x to the depth-`depth` point cloud of Gamma, found by pruned
/// search over cylinders (an upper bound for dist(x, Gamma)).
double distance_to_cloud(const IFSAttractor& ifs, const Point& x, int depth = 6);

/// Bracket on the distance between the convex hulls of two point sets
/// (Frank-Wolfe on the Minkowski difference; the lower value is a certified
/// separating-plane bound).
DistanceBracket hull_distance(std::span<const Point> a, std::span<const Point> b, int max_iter = 20000);

struct DisjointnessCheck {
    bool consistent = true;       ///< declared class not contradicted
    double min_set_distance = 0;  ///< upper bound over level-1 pairs
    double min_hull_distance = 0; ///< upper bound over level-1 pairs
};

/// Guard for a declared disjointness class using depth-`depth` point clouds of
/// the level-1 copies. Can reject a declaration but never certify one.
DisjointnessCheck check_disjointness(const IFSAttractor& ifs, int depth = 6);

}  // namespace fiem
