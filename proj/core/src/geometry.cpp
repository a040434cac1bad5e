#include "fiem/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fiem {

namespace {

template <class Visit>
void for_each_cylinder(const IFSAttractor& ifs, const Similarity& root, int depth, Visit&& visit) {
    if (depth == 0) {
        visit(root);
        return;
    }
    for (const auto& s : ifs.maps()) for_each_cylinder(ifs, root * s, depth - 1, visit);
}

std::vector<Point> anchors_of(const IFSAttractor& ifs) {
    std::vector<Point> anchors;
    for (const auto& s : ifs.maps()) anchors.push_back(s.fixed_point());
    return anchors;
}

}  // namespace

std::vector<Point> point_cloud(const IFSAttractor& ifs, int depth, const VectorIndex& root) {
    const auto anchors = anchors_of(ifs);
    std::vector<Point> out;
    for_each_cylinder(ifs, ifs.subattractor(root).map, depth, [&](const Similarity& s) {
        for (const auto& p : anchors) out.push_back(s(p));
    });
    return out;
}

std::vector<Point> barycentre_cloud(const IFSAttractor& ifs, int depth, const VectorIndex& root) {
    std::vector<Point> out;
    const Point c = ifs.barycentre();
    for_each_cylinder(ifs, ifs.subattractor(root).map, depth, [&](const Similarity& s) { out.push_back(s(c)); });
    return out;
}

ContactResult classify_contact(const IFSAttractor& ifs, const Similarity& f, const Similarity& g, double touch_tol,
                               std::size_t max_nodes) {
    const auto anchors = anchors_of(ifs);
    const Point c = ifs.barycentre();
    const double radius = ifs.bounding_radius();
    const double threshold = touch_tol * std::max(f.rho(), g.rho()) * ifs.diameter();

    struct Node {
        Similarity a, b;
    };
    std::vector<Node> stack{{f, g}};
    double hi = std::numeric_limits<double>::infinity();
    double lo = std::numeric_limits<double>::infinity();
    std::size_t nodes = 0;

    while (!stack.empty()) {
        const Node node = stack.back();
        stack.pop_back();
        const double lower = (node.a(c) - node.b(c)).norm() - (node.a.rho() + node.b.rho()) * radius;
        for (const auto& p : anchors) {
            const Point ap = node.a(p);
            for (const auto& q : anchors) hi = std::min(hi, (ap - node.b(q)).norm());
        }
        if (hi <= threshold) return {Contact::touching, {0.0, hi}};
        if (lower > 0.0) {
            lo = std::min(lo, lower);
            continue;
        }
        if (++nodes > max_nodes) return {Contact::undecided, {0.0, hi}};
        const double ra = node.a.rho(), rb = node.b.rho();
        const bool split_a = ra >= rb * (1.0 - 1e-12);
        const bool split_b = rb >= ra * (1.0 - 1e-12);
        for (const auto& si : ifs.maps()) {
            const Similarity na = split_a ? node.a * si : node.a;
            if (split_b) {
                for (const auto& sj : ifs.maps()) stack.push_back({na, node.b * sj});
            } else {
                stack.push_back({na, node.b});
            }
            if (!split_a) break;
        }
    }
    return {Contact::separated, {std::min(lo, hi), hi}};
}

bool elements_touch(const IFSAttractor& ifs, const VectorIndex& m, const VectorIndex& mp) {
    // Overlapping cylinders (one index a prefix of the other) always intersect.
    if (m.is_prefix_of(mp) || mp.is_prefix_of(m)) return true;
    const auto res = classify_contact(ifs, ifs.subattractor(m).map, ifs.subattractor(mp).map);
    return res.contact != Contact::separated;
}

double distance_to_cloud(const IFSAttractor& ifs, const Point& x, int depth) {
    const auto anchors = anchors_of(ifs);
    const Point c = ifs.barycentre();
    const double radius = ifs.bounding_radius();
    double best = std::numeric_limits<double>::infinity();
    struct Node {
        Similarity s;
        int depth;
    };
    std::vector<Node> stack{{Similarity::identity(), 0}};
    while (!stack.empty()) {
        const Node node = stack.back();
        stack.pop_back();
        if ((x - node.s(c)).norm() - node.s.rho() * radius >= best) continue;
        if (node.depth == depth) {
            for (const auto& p : anchors) best = std::min(best, (x - node.s(p)).norm());
            continue;
        }
        for (const auto& m : ifs.maps()) stack.push_back({node.s * m, node.depth + 1});
    }
    return best;
}

DistanceBracket hull_distance(std::span<const Point> a, std::span<const Point> b, int max_iter) {
    auto support = [&](const Point& dir) {
        // minimiser of dir . x over the Minkowski difference a - b
        std::size_t ia = 0, ib = 0;
        double best_a = std::numeric_limits<double>::infinity();
        double best_b = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < a.size(); ++i) {
            const double v = dir.dot(a[i]);
            if (v < best_a) best_a = v, ia = i;
        }
        for (std::size_t j = 0; j < b.size(); ++j) {
            const double v = dir.dot(b[j]);
            if (v > best_b) best_b = v, ib = j;
        }
        return Point(a[ia] - b[ib]);
    };

    Point v = a.front() - b.front();
    double lower = 0.0;
    for (int it = 0; it < max_iter; ++it) {
        const double vn = v.norm();
        if (vn == 0.0) return {0.0, 0.0};
        const Point w = support(v);
        lower = std::max(lower, v.dot(w) / vn);
        if (vn - lower <= 1e-14 * std::max(1.0, vn)) break;
        const Point dvw = v - w;
        const double denom = dvw.squaredNorm();
        if (denom == 0.0) break;
        const double lambda = std::clamp(v.dot(dvw) / denom, 0.0, 1.0);
        v -= lambda * dvw;
    }
    return {std::max(0.0, lower), v.norm()};
}

DisjointnessCheck check_disjointness(const IFSAttractor& ifs, int depth) {
    DisjointnessCheck out;
    out.min_set_distance = std::numeric_limits<double>::infinity();
    out.min_hull_distance = std::numeric_limits<double>::infinity();

    // cap the clouds at a few thousand points per copy
    int cloud = std::max(1, depth - 1);
    while (cloud > 1 && std::pow(static_cast<double>(ifs.size()), cloud) * ifs.size() > 4096) --cloud;

    const auto m = static_cast<int>(ifs.size());
    std::vector<std::vector<Point>> clouds;
    for (int i = 1; i <= m; ++i) clouds.push_back(point_cloud(ifs, cloud, VectorIndex{i}));

    const double tol = 1e-9 * ifs.diameter();
    bool touching = false, hulls_meet = false;
    for (int i = 1; i <= m; ++i) {
        for (int j = i + 1; j <= m; ++j) {
            const auto contact = classify_contact(ifs, ifs.map(i), ifs.map(j));
            out.min_set_distance = std::min(out.min_set_distance, contact.distance.hi);
            touching |= contact.contact == Contact::touching;
            const auto hd = hull_distance(clouds[static_cast<std::size_t>(i - 1)], clouds[static_cast<std::size_t>(j - 1)]);
            out.min_hull_distance = std::min(out.min_hull_distance, hd.hi);
            hulls_meet |= hd.lo <= 0.0 && hd.hi <= tol;
        }
    }
    switch (ifs.disjointness()) {
        case Disjointness::hull_disjoint: out.consistent = !touching && !hulls_meet; break;
        case Disjointness::disjoint: out.consistent = !touching; break;
        case Disjointness::non_disjoint: out.consistent = true; break;
    }
    return out;
}

}  // namespace fiem
