#include "fiem/library.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fiem::library {

namespace {

constexpr double pi = std::numbers::pi;

Matrix diag(double a, double b, double c) {
    Matrix m = Matrix::Zero();
    m(0, 0) = a;
    m(1, 1) = b;
    m(2, 2) = c;
    return m;
}

// All 2^n coordinate reflections x_i -> 1 - x_i of the unit cube (n axes).
std::vector<Isometry> cube_reflections(int axes) {
    std::vector<Isometry> out;
    for (int mask = 1; mask < (1 << axes); ++mask) {
        Matrix r = Matrix::Identity();
        Point t = Point::Zero();
        for (int a = 0; a < axes; ++a)
            if (mask & (1 << a)) {
                r(a, a) = -1.0;
                t(a) = 1.0;
            }
        out.emplace_back(1.0, r, t);
    }
    return out;
}

void check_cantor_rho(double rho) {
    if (!(rho > 0.0 && rho <= 0.5)) throw std::invalid_argument("Cantor constructions need 0 < rho <= 1/2");
}

// Conjugates a planar IFS by the similarity placing (0,0)->p and (1,0)->q.
IFSAttractor place_segment(const IFSAttractor& base, const Point& p, const Point& q, const std::string& name) {
    const Point d = q - p;
    const Similarity place = Similarity::planar(d.norm(), std::atan2(d(1), d(0)), p);
    const Similarity unplace = place.inverse();
    std::vector<Similarity> maps;
    for (const auto& s : base.maps()) maps.push_back(place * s * unplace);
    AttractorOptions opt;
    opt.diameter = base.diameter() * d.norm();
    opt.disjointness = base.disjointness();
    opt.name = name;
    for (const auto& t : base.symmetry_group())
        if (t.distance(Isometry::identity()) > 1e-14) opt.symmetries.push_back(place * t * unplace);
    return IFSAttractor(std::move(maps), 2, std::move(opt));
}

}  // namespace

IFSAttractor cantor_set(double rho, bool lift) {
    check_cantor_rho(rho);
    std::vector<Similarity> maps{
        Similarity(rho, Matrix::Identity(), Point::Zero()),
        Similarity(rho, Matrix::Identity(), Point(1.0 - rho, 0.0, 0.0)),
    };
    AttractorOptions opt;
    opt.diameter = 1.0;
    opt.disjointness = rho < 0.5 ? Disjointness::hull_disjoint : Disjointness::non_disjoint;
    opt.name = "cantor_set";
    // x -> 1 - x, y -> -y and their product
    opt.symmetries = {Isometry(1.0, diag(-1, 1, 1), Point(1, 0, 0)), Isometry(1.0, diag(1, -1, 1), Point::Zero()),
                      Isometry(1.0, diag(-1, -1, 1), Point(1, 0, 0))};
    IFSAttractor out(std::move(maps), 2, std::move(opt));
    return lift ? out.lifted() : out;
}

IFSAttractor cantor_dust(double rho, int n, bool lift) {
    check_cantor_rho(rho);
    if (n != 2 && n != 3) throw std::invalid_argument("Cantor dust dimension must be 2 or 3");
    if (lift && n != 2) throw std::invalid_argument("only the planar Cantor dust can be lifted");
    std::vector<Similarity> maps;
    for (int corner = 0; corner < (1 << n); ++corner) {
        Point t = Point::Zero();
        for (int a = 0; a < n; ++a)
            if (corner & (1 << a)) t(a) = 1.0 - rho;
        maps.emplace_back(rho, Matrix::Identity(), t);
    }
    AttractorOptions opt;
    opt.diameter = std::sqrt(static_cast<double>(n));
    opt.disjointness = rho < 0.5 ? Disjointness::hull_disjoint : Disjointness::non_disjoint;
    opt.name = "cantor_dust";
    opt.symmetries = cube_reflections(n);
    IFSAttractor out(std::move(maps), n, std::move(opt));
    return lift ? out.lifted() : out;
}

IFSAttractor koch_curve(bool lift) {
    const double third = 1.0 / 3.0;
    std::vector<Similarity> maps{
        Similarity::planar(third, 0.0, Point::Zero()),
        Similarity::planar(third, pi / 3.0, Point(third, 0.0, 0.0)),
        Similarity::planar(third, -pi / 3.0, Point(0.5, 0.5 / std::sqrt(3.0), 0.0)),
        Similarity::planar(third, 0.0, Point(2.0 * third, 0.0, 0.0)),
    };
    AttractorOptions opt;
    opt.diameter = 1.0;
    opt.disjointness = Disjointness::non_disjoint;
    opt.name = "koch_curve";
    opt.symmetries = {Isometry(1.0, diag(-1, 1, 1), Point(1, 0, 0))};
    IFSAttractor out(std::move(maps), 2, std::move(opt));
    return lift ? out.lifted() : out;
}

Point koch_snowflake_centre() { return {0.5, -std::sqrt(3.0) / 6.0, 0.0}; }

IFSAttractor koch_snowflake() {
    const Point c = koch_snowflake_centre();
    const double tip_radius = 1.0 / std::sqrt(3.0);
    std::vector<Similarity> maps;
    // central copy: c + R(pi/6)(x - c)/sqrt(3)
    {
        const Similarity rot = Similarity::planar(1.0 / std::sqrt(3.0), pi / 6.0, Point::Zero());
        maps.emplace_back(rot.rho(), rot.rotation(), c - rot(c));
    }
    for (int j = 0; j < 6; ++j) {
        const double a = pi / 6.0 + j * pi / 3.0;
        const Point tip = c + tip_radius * Point(std::cos(a), std::sin(a), 0.0);
        maps.emplace_back(1.0 / 3.0, Matrix::Identity(), (2.0 / 3.0) * tip);
    }
    AttractorOptions opt;
    opt.diameter = 2.0 * tip_radius;
    opt.disjointness = Disjointness::non_disjoint;
    opt.name = "koch_snowflake";
    // dihedral group of order 12 about the centre
    for (int j = 0; j < 6; ++j) {
        for (bool reflect : {false, true}) {
            if (j == 0 && !reflect) continue;
            const Similarity r = Similarity::planar(1.0, j * pi / 3.0, Point::Zero(), reflect);
            opt.symmetries.emplace_back(1.0, r.rotation(), c - r(c));
        }
    }
    return IFSAttractor(std::move(maps), 2, std::move(opt));
}

std::vector<IFSAttractor> koch_snowflake_boundary() {
    const IFSAttractor base = koch_curve();
    const Point a(0.0, 0.0, 0.0), b(1.0, 0.0, 0.0), c(0.5, -std::sqrt(3.0) / 2.0, 0.0);
    return {place_segment(base, a, b, "koch_snowflake_edge_1"), place_segment(base, b, c, "koch_snowflake_edge_2"),
            place_segment(base, c, a, "koch_snowflake_edge_3")};
}

IFSAttractor sierpinski_tetrahedron(double rho) {
    if (!(rho > 0.0 && rho <= 0.5)) throw std::invalid_argument("Sierpinski tetrahedron needs 0 < rho <= 1/2");
    const std::array<Point, 4> v{
        Point(0.0, 0.0, 0.0),
        Point(1.0, 0.0, 0.0),
        Point(0.5, std::sqrt(3.0) / 2.0, 0.0),
        Point(0.5, 1.0 / (2.0 * std::sqrt(2.0)), std::sqrt(5.0) / (2.0 * std::sqrt(2.0))),
    };
    std::vector<Similarity> maps;
    for (const auto& x : v) maps.emplace_back(rho, Matrix::Identity(), (1.0 - rho) * x);
    AttractorOptions opt;
    opt.diameter = 1.0;  // longest edge; the hull is the tetrahedron
    opt.disjointness = rho < 0.5 ? Disjointness::hull_disjoint : Disjointness::non_disjoint;
    opt.name = "sierpinski_tetrahedron";
    // x -> 1 - x swaps x_1, x_2; the plane through x_1, x_2 bisecting x_3 x_4 swaps x_3, x_4
    const Isometry swap12(1.0, diag(-1, 1, 1), Point(1, 0, 0));
    const Point n = (v[2] - v[3]).normalized();
    const Isometry swap34(1.0, Matrix::Identity() - 2.0 * n * n.transpose(), Point::Zero());
    opt.symmetries = {swap12, swap34, swap12 * swap34};
    return IFSAttractor(std::move(maps), 3, std::move(opt));
}

}  // namespace fiem::library
