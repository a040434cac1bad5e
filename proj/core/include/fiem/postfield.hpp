#pragma once

// Scattered, total and far fields of a Galerkin density.

#include <iosfwd>
#include <span>
#include <vector>

#include "fiem/galerkin.hpp"

namespace fiem {

enum class FieldKind { scattered, total, farfield };

struct FieldValue {
    cplx value;
    bool accurate = true;  ///< false closer than h_Q to the scatterer
};

struct FieldGrid {
    FieldKind kind = FieldKind::scattered;
    int dim = 2;
    std::vector<Point> points;  ///< evaluation points or unit directions
    std::vector<cplx> values;
    std::vector<bool> accurate;
};

/// Precomputed element rules and normalised coefficients for repeated
/// evaluation.
class FieldEvaluator {
public:
    explicit FieldEvaluator(const DensitySolution& solution);

    FieldValue scattered(const Point& x) const;
    FieldValue total(const Point& x) const;
    cplx far(const Point& xhat) const;

private:
    const DensitySolution* solution_;
    std::vector<ElementNodes> nodes_;
    std::vector<cplx> coeffs_;  ///< c_j mu_j^(-1/2)
};

FieldValue near_field(const DensitySolution& solution, const Point& x);
FieldValue total_field(const DensitySolution& solution, const Point& x);

FieldGrid near_field(const DensitySolution& solution, std::span<const Point> points, bool total = false);
FieldGrid far_field(const DensitySolution& solution, std::span<const Point> directions);

/// Points equispaced along the boundary of [x0,x1] x [y0,y1], `per_edge` per edge.
std::vector<Point> square_perimeter(double x0, double x1, double y0, double y1, int per_edge);
/// Rectangular grid of nx x ny points (rows of constant y).
std::vector<Point> rectangle_grid(double x0, double x1, double y0, double y1, int nx, int ny);
/// `count` equispaced directions on the unit circle, starting at angle 0.
std::vector<Point> circle_directions(int count);
/// Uniform grid in (polar, azimuth) with cell-centred polar angles.
std::vector<Point> sphere_directions(int n_polar, int n_azimuth);

/// max |ref - test| / max |ref|; grids must share their points.
double relative_error(const FieldGrid& ref, const FieldGrid& test);
/// max |a - b| over shared points.
double max_difference(const FieldGrid& a, const FieldGrid& b);

/// Header then one row per point: coordinates (angles for far fields),
/// re, im, accurate.
void write_field_csv(const FieldGrid& grid, std::ostream& out);

}  // namespace fiem
