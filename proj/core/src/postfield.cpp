#include "fiem/postfield.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "fiem/geometry.hpp"

namespace fiem {

namespace {

constexpr double pi = std::numbers::pi;

double distance_to_scatterer(const ScattererUnion& s, const Point& x) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : s.parts()) best = std::min(best, distance_to_cloud(p, x, 6));
    return best;
}

}  // namespace

FieldEvaluator::FieldEvaluator(const DensitySolution& solution) : solution_(&solution) {
    const auto rules = element_rules(solution.mesh, solution.h_q);
    for (const auto& r : rules) nodes_.push_back(flatten(r));
    for (std::size_t j = 0; j < solution.mesh.size(); ++j)
        coeffs_.push_back(solution.coeffs(static_cast<Eigen::Index>(j)) / std::sqrt(solution.mesh[j].mu));
}

FieldValue FieldEvaluator::scattered(const Point& x) const {
    const double k = solution_->wave.k;
    const int dim = solution_->mesh.ambient_dim();
    cplx u = 0.0;
    for (std::size_t j = 0; j < nodes_.size(); ++j) {
        if (coeffs_[j] == 0.0) continue;
        const auto& n = nodes_[j];
        cplx s = 0.0;
        for (std::size_t a = 0; a < n.size(); ++a) {
            const double r = (x - Point(n.x[a], n.y[a], n.z[a])).norm();
            if (r > 0.0) s += n.w[a] * phi_r(r, k, dim);  // a node at x is dropped; x is then flagged
        }
        u += coeffs_[j] * s;
    }
    const bool accurate = distance_to_scatterer(solution_->mesh.scatterer(), x) >= solution_->h_q;
    return {u, accurate};
}

FieldValue FieldEvaluator::total(const Point& x) const {
    auto v = scattered(x);
    v.value += incident_plane_wave(x, solution_->wave);
    return v;
}

cplx FieldEvaluator::far(const Point& xhat) const {
    const double k = solution_->wave.k;
    const int dim = solution_->mesh.ambient_dim();
    cplx u = 0.0;
    for (std::size_t j = 0; j < nodes_.size(); ++j) {
        const auto& n = nodes_[j];
        cplx s = 0.0;
        for (std::size_t a = 0; a < n.size(); ++a) s += n.w[a] * phi_farfield(xhat, Point(n.x[a], n.y[a], n.z[a]), k, dim);
        u += coeffs_[j] * s;
    }
    return u;
}

FieldValue near_field(const DensitySolution& solution, const Point& x) { return FieldEvaluator(solution).scattered(x); }

FieldValue total_field(const DensitySolution& solution, const Point& x) { return FieldEvaluator(solution).total(x); }

FieldGrid near_field(const DensitySolution& solution, std::span<const Point> points, bool total) {
    const FieldEvaluator ev(solution);
    FieldGrid g;
    g.kind = total ? FieldKind::total : FieldKind::scattered;
    g.dim = solution.mesh.ambient_dim();
    for (const auto& x : points) {
        const auto v = total ? ev.total(x) : ev.scattered(x);
        g.points.push_back(x);
        g.values.push_back(v.value);
        g.accurate.push_back(v.accurate);
    }
    return g;
}

FieldGrid far_field(const DensitySolution& solution, std::span<const Point> directions) {
    const FieldEvaluator ev(solution);
    FieldGrid g;
    g.kind = FieldKind::farfield;
    g.dim = solution.mesh.ambient_dim();
    for (const auto& d : directions) {
        if (std::abs(d.norm() - 1.0) > 1e-12) throw std::invalid_argument("far-field directions must be unit vectors");
        g.points.push_back(d);
        g.values.push_back(ev.far(d));
        g.accurate.push_back(true);
    }
    return g;
}

std::vector<Point> square_perimeter(double x0, double x1, double y0, double y1, int per_edge) {
    if (per_edge < 1) throw std::invalid_argument("need at least one point per edge");
    std::vector<Point> out;
    const Point corners[4] = {{x0, y0, 0}, {x1, y0, 0}, {x1, y1, 0}, {x0, y1, 0}};
    for (int e = 0; e < 4; ++e) {
        const Point& a = corners[e];
        const Point& b = corners[(e + 1) % 4];
        for (int i = 0; i < per_edge; ++i) out.push_back(a + (b - a) * (static_cast<double>(i) / per_edge));
    }
    return out;
}

std::vector<Point> rectangle_grid(double x0, double x1, double y0, double y1, int nx, int ny) {
    if (nx < 2 || ny < 2) throw std::invalid_argument("grid resolution must be at least 2 x 2");
    std::vector<Point> out;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
            out.emplace_back(x0 + (x1 - x0) * i / (nx - 1), y0 + (y1 - y0) * j / (ny - 1), 0.0);
    return out;
}

std::vector<Point> circle_directions(int count) {
    if (count < 1) throw std::invalid_argument("need at least one direction");
    std::vector<Point> out;
    for (int i = 0; i < count; ++i) {
        const double a = 2.0 * pi * i / count;
        out.emplace_back(std::cos(a), std::sin(a), 0.0);
    }
    return out;
}

std::vector<Point> sphere_directions(int n_polar, int n_azimuth) {
    if (n_polar < 1 || n_azimuth < 1) throw std::invalid_argument("need at least one direction");
    std::vector<Point> out;
    for (int i = 0; i < n_polar; ++i) {
        const double th = pi * (i + 0.5) / n_polar;
        for (int j = 0; j < n_azimuth; ++j) {
            const double ph = 2.0 * pi * j / n_azimuth;
            out.emplace_back(std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th));
        }
    }
    return out;
}

double max_difference(const FieldGrid& a, const FieldGrid& b) {
    if (a.points.size() != b.points.size()) throw std::invalid_argument("field grids have different sizes");
    double m = 0.0;
    for (std::size_t i = 0; i < a.points.size(); ++i) {
        if ((a.points[i] - b.points[i]).norm() > 1e-12) throw std::invalid_argument("field grids differ in their points");
        m = std::max(m, std::abs(a.values[i] - b.values[i]));
    }
    return m;
}

double relative_error(const FieldGrid& ref, const FieldGrid& test) {
    const double diff = max_difference(ref, test);
    double norm = 0.0;
    for (const auto& v : ref.values) norm = std::max(norm, std::abs(v));
    if (norm == 0.0) throw std::invalid_argument("reference field is identically zero");
    return diff / norm;
}

void write_field_csv(const FieldGrid& grid, std::ostream& out) {
    out << std::setprecision(17);
    const bool far = grid.kind == FieldKind::farfield;
    if (far)
        out << (grid.dim == 2 ? "angle" : "polar,azimuth");
    else
        out << (grid.dim == 2 ? "x,y" : "x,y,z");
    out << ",re,im,accurate\n";
    for (std::size_t i = 0; i < grid.points.size(); ++i) {
        const Point& p = grid.points[i];
        if (far && grid.dim == 2) {
            out << std::atan2(p(1), p(0));
        } else if (far) {
            out << std::acos(std::clamp(p(2), -1.0, 1.0)) << ',' << std::atan2(p(1), p(0));
        } else {
            out << p(0) << ',' << p(1);
            if (grid.dim == 3) out << ',' << p(2);
        }
        out << ',' << grid.values[i].real() << ',' << grid.values[i].imag() << ',' << (grid.accurate[i] ? 1 : 0)
            << '\n';
    }
}

}  // namespace fiem
