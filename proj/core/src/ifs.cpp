#include "fiem/ifs.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace fiem {

// ---------------------------------------------------------------------------
// Disjointness / VectorIndex

std::string_view to_string(Disjointness d) {
    switch (d) {
        case Disjointness::disjoint: return "disjoint";
        case Disjointness::hull_disjoint: return "hull-disjoint";
        case Disjointness::non_disjoint: return "non-disjoint";
    }
    return "non-disjoint";
}

Disjointness disjointness_from_string(std::string_view s) {
    if (s == "disjoint") return Disjointness::disjoint;
    if (s == "hull-disjoint" || s == "hull_disjoint") return Disjointness::hull_disjoint;
    if (s == "non-disjoint" || s == "non_disjoint") return Disjointness::non_disjoint;
    throw std::invalid_argument("unknown disjointness class '" + std::string(s) + "'");
}

VectorIndex VectorIndex::child(int m) const {
    VectorIndex out = *this;
    out.entries_.push_back(m);
    return out;
}

VectorIndex VectorIndex::parent() const {
    VectorIndex out = *this;
    if (!out.entries_.empty()) out.entries_.pop_back();
    return out;
}

VectorIndex VectorIndex::concat(const VectorIndex& tail) const {
    VectorIndex out = *this;
    out.entries_.insert(out.entries_.end(), tail.entries_.begin(), tail.entries_.end());
    return out;
}

bool VectorIndex::is_prefix_of(const VectorIndex& other) const {
    return entries_.size() <= other.entries_.size() &&
           std::equal(entries_.begin(), entries_.end(), other.entries_.begin());
}

std::size_t VectorIndex::common_prefix(const VectorIndex& other) const {
    const std::size_t n = std::min(entries_.size(), other.entries_.size());
    std::size_t i = 0;
    while (i < n && entries_[i] == other.entries_[i]) ++i;
    return i;
}

VectorIndex VectorIndex::suffix(std::size_t from) const {
    if (from >= entries_.size()) return {};
    return VectorIndex(std::vector<int>(entries_.begin() + static_cast<std::ptrdiff_t>(from), entries_.end()));
}

std::string VectorIndex::to_string() const {
    if (entries_.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (i) out += '-';
        out += std::to_string(entries_[i]);
    }
    return out;
}

VectorIndex VectorIndex::parse(std::string_view text) {
    if (text == "0" || text.empty()) return {};
    std::vector<int> entries;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t dash = std::min(text.find('-', pos), text.size());
        int value = 0;
        const auto* first = text.data() + pos;
        const auto* last = text.data() + dash;
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc() || ptr != last || value < 1)
            throw std::invalid_argument("malformed vector index '" + std::string(text) + "'");
        entries.push_back(value);
        pos = dash + 1;
    }
    return VectorIndex(std::move(entries));
}

// ---------------------------------------------------------------------------
// Dimension, barycentre, bounds

double hausdorff_dimension(std::span<const double> rhos) {
    if (rhos.size() < 2) throw std::invalid_argument("an IFS needs at least two maps");
    for (double r : rhos)
        if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("contraction factors must lie in (0,1)");

    const double r0 = rhos.front();
    const bool homogeneous = std::all_of(rhos.begin(), rhos.end(), [&](double r) {
        return std::abs(r - r0) <= 1e-15 * r0;
    });
    if (homogeneous) return std::log(static_cast<double>(rhos.size())) / std::log(1.0 / r0);

    auto excess = [&](double d) {
        double s = 0.0;
        for (double r : rhos) s += std::pow(r, d);
        return s - 1.0;
    };
    double lo = 0.0, hi = 1.0;
    while (excess(hi) > 0.0) hi *= 2.0;
    for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        (excess(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

Point attractor_barycentre(std::span<const Similarity> maps, std::span<const double> weights) {
    Matrix lhs = Matrix::Identity();
    Point rhs = Point::Zero();
    for (std::size_t m = 0; m < maps.size(); ++m) {
        lhs -= weights[m] * maps[m].linear();
        rhs += weights[m] * maps[m].translation();
    }
    Eigen::FullPivLU<Matrix> lu(lhs);
    if (!lu.isInvertible()) throw std::logic_error("barycentre system is singular");
    return lu.solve(rhs);
}

namespace {

// Radius of a ball about `centre` containing the attractor, tightened by
// descending `depth` levels.
double bounding_radius_about(std::span<const Similarity> maps, const Point& centre, int depth) {
    double r0 = 0.0;
    for (const auto& s : maps) r0 = std::max(r0, (s(centre) - centre).norm() / (1.0 - s.rho()));

    double best = 0.0;
    std::vector<Similarity> stack{Similarity::identity()};
    std::vector<int> level{0};
    while (!stack.empty()) {
        const Similarity cur = stack.back();
        const int lev = level.back();
        stack.pop_back();
        level.pop_back();
        if (lev == depth) {
            best = std::max(best, (cur(centre) - centre).norm() + cur.rho() * r0);
            continue;
        }
        for (const auto& s : maps) {
            stack.push_back(cur * s);
            level.push_back(lev + 1);
        }
    }
    return std::min(best, r0);
}

int cloud_depth(std::size_t m, std::size_t max_points) {
    int depth = 0;
    std::size_t count = 1;
    while (count * m <= max_points) {
        count *= m;
        ++depth;
    }
    return depth;
}

}  // namespace

DiameterBracket diameter_bracket(std::span<const Similarity> maps, double tolerance) {
    std::vector<double> rhos;
    for (const auto& s : maps) rhos.push_back(s.rho());
    const double d = hausdorff_dimension(rhos);
    std::vector<double> w;
    for (double r : rhos) w.push_back(std::pow(r, d));
    const Point c = attractor_barycentre(maps, w);
    const double radius = bounding_radius_about(maps, c, cloud_depth(maps.size(), 512));

    std::vector<Point> anchors;
    for (const auto& s : maps) anchors.push_back(s.fixed_point());

    struct Node {
        Similarity a, b;
        double upper;
        bool operator<(const Node& o) const { return upper < o.upper; }
    };
    auto lower_of = [&](const Similarity& a, const Similarity& b) {
        double best = 0.0;
        for (const auto& p : anchors)
            for (const auto& q : anchors) best = std::max(best, (a(p) - b(q)).norm());
        return best;
    };
    auto upper_of = [&](const Similarity& a, const Similarity& b) {
        return (a(c) - b(c)).norm() + (a.rho() + b.rho()) * radius;
    };

    double lo = lower_of(Similarity::identity(), Similarity::identity());
    std::priority_queue<Node> queue;
    queue.push({Similarity::identity(), Similarity::identity(), 2.0 * radius});
    std::size_t expansions = 0;
    while (!queue.empty()) {
        Node top = queue.top();
        if (top.upper - lo <= tolerance || expansions > 2'000'000) break;
        queue.pop();
        ++expansions;
        const bool split_a = top.a.rho() >= top.b.rho();
        const bool split_b = top.b.rho() >= top.a.rho();
        for (std::size_t i = 0; i < (split_a ? maps.size() : 1); ++i) {
            const Similarity na = split_a ? top.a * maps[i] : top.a;
            for (std::size_t j = 0; j < (split_b ? maps.size() : 1); ++j) {
                const Similarity nb = split_b ? top.b * maps[j] : top.b;
                lo = std::max(lo, lower_of(na, nb));
                const double up = upper_of(na, nb);
                if (up > lo) queue.push({na, nb, up});
            }
        }
    }
    const double hi = queue.empty() ? lo : std::max(lo, queue.top().upper);
    return {lo, hi, false};
}

DiameterBracket diameter_estimate(const IFSAttractor& ifs, double tolerance) {
    if (ifs.diameter_is_analytic()) return {ifs.diameter(), ifs.diameter(), true};
    return diameter_bracket(ifs.maps(), tolerance);
}

// ---------------------------------------------------------------------------
// IFSAttractor

IFSAttractor::IFSAttractor(std::vector<Similarity> maps, int ambient_dim, AttractorOptions options)
    : maps_(std::move(maps)),
      ambient_dim_(ambient_dim),
      measure_total_(options.measure_total),
      disjointness_(options.disjointness),
      name_(std::move(options.name)) {
    if (maps_.size() < 2) throw std::invalid_argument("an IFS needs at least two maps");
    if (ambient_dim_ != 2 && ambient_dim_ != 3) throw std::invalid_argument("ambient dimension must be 2 or 3");
    if (!(measure_total_ > 0.0)) throw std::invalid_argument("measure_total must be positive");

    std::vector<double> rhos;
    for (const auto& s : maps_) {
        if (!(s.rho() > 0.0 && s.rho() < 1.0)) throw std::invalid_argument("contraction factors must lie in (0,1)");
        if (ambient_dim_ == 2) {
            if (std::abs(s.translation()(2)) > 0.0 || std::abs(s.rotation()(2, 2) - 1.0) > 1e-12)
                throw std::invalid_argument("planar IFS maps must act in the x-y plane");
        }
        rhos.push_back(s.rho());
    }
    dim_ = hausdorff_dimension(rhos);
    for (double r : rhos) weights_.push_back(std::pow(r, dim_));
    // renormalise so that the weights sum to one to rounding
    double total = 0.0;
    for (double w : weights_) total += w;
    for (double& w : weights_) w /= total;

    barycentre_ = attractor_barycentre(maps_, weights_);
    bounding_radius_ = bounding_radius_about(maps_, barycentre_, cloud_depth(maps_.size(), 4096));

    symmetries_.push_back(Isometry::identity());
    for (const auto& t : options.symmetries) {
        if (!t.is_isometry()) throw std::invalid_argument("symmetries must be isometries");
        if (t.distance(Isometry::identity()) > 1e-12) symmetries_.push_back(t);
    }

    if (options.diameter) {
        if (!(*options.diameter > 0.0)) throw std::invalid_argument("diameter must be positive");
        diameter_ = *options.diameter;
        diameter_analytic_ = true;
    } else {
        diameter_ = diameter_bracket(maps_, 1e-10).hi;
    }
}

bool IFSAttractor::is_homogeneous(double tol) const {
    const double r0 = maps_.front().rho();
    return std::all_of(maps_.begin(), maps_.end(), [&](const Similarity& s) { return std::abs(s.rho() - r0) <= tol; });
}

double IFSAttractor::max_rho() const {
    double r = 0.0;
    for (const auto& s : maps_) r = std::max(r, s.rho());
    return r;
}

double IFSAttractor::min_rho() const {
    double r = 1.0;
    for (const auto& s : maps_) r = std::min(r, s.rho());
    return r;
}

void IFSAttractor::validate_index(const VectorIndex& m) const {
    for (int e : m.entries())
        if (e < 1 || static_cast<std::size_t>(e) > maps_.size())
            throw std::out_of_range("vector index entry " + std::to_string(e) + " outside 1.." +
                                    std::to_string(maps_.size()));
}

SubAttractor IFSAttractor::subattractor(const VectorIndex& m) const {
    validate_index(m);
    SubAttractor out{Similarity::identity(), 1.0, measure_total_};
    for (int e : m.entries()) {
        out.map = out.map * map(e);
        out.rho *= map(e).rho();
        out.mu *= weights_[static_cast<std::size_t>(e - 1)];
    }
    return out;
}

Point IFSAttractor::barycentre(const VectorIndex& m) const { return subattractor(m).map(barycentre_); }

double IFSAttractor::rho_of(const VectorIndex& m) const {
    validate_index(m);
    double r = 1.0;
    for (int e : m.entries()) r *= map(e).rho();
    return r;
}

double IFSAttractor::mu_of(const VectorIndex& m) const {
    validate_index(m);
    double mu = measure_total_;
    for (int e : m.entries()) mu *= weights_[static_cast<std::size_t>(e - 1)];
    return mu;
}

IFSAttractor IFSAttractor::with_measure_total(double measure_total) const {
    IFSAttractor out = *this;
    if (!(measure_total > 0.0)) throw std::invalid_argument("measure_total must be positive");
    out.measure_total_ = measure_total;
    return out;
}

IFSAttractor IFSAttractor::lifted() const {
    if (ambient_dim_ != 2) throw std::logic_error("only planar attractors can be lifted");
    IFSAttractor out = *this;
    out.ambient_dim_ = 3;
    out.name_ = name_ + "+lift";
    Matrix flip = Matrix::Identity();
    flip(2, 2) = -1.0;
    const Isometry zflip(1.0, flip, Point::Zero());
    const auto planar = symmetries_;
    for (const auto& t : planar) out.symmetries_.push_back(zflip * t);
    return out;
}

}  // namespace fiem
