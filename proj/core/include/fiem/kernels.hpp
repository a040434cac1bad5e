#pragma once

// Helmholtz fundamental solution, its singular/smooth split, the far-field
// kernel and plane-wave incident fields.

#include <cmath>
#include <complex>

#include "fiem/similarity.hpp"

namespace fiem {

using cplx = std::complex<double>;

struct WaveParams {
    WaveParams(double k, const Point& theta, int dim);

    double k;
    Point theta;  ///< unit incidence direction (z = 0 in 2D)
    int dim;      ///< ambient dimension, 2 or 3
};

cplx phi(const Point& x, const Point& y, double k, int dim);
inline cplx phi(const Point& x, const Point& y, const WaveParams& w) { return phi(x, y, w.k, w.dim); }

/// Phi as a function of r = |x - y| > 0.
cplx phi_r(double r, double k, int dim);

/// -log(r)/(2 pi) in 2D, 1/(4 pi r) in 3D.
double phi_sing(const Point& x, const Point& y, int dim);
double phi_sing_r(double r, int dim);

/// Phi - Phi_sing, continuous at r = 0.
cplx phi_smooth(const Point& x, const Point& y, double k, int dim);
cplx phi_smooth_r(double r, double k, int dim);
/// Value of phi_smooth at coincident points.
cplx phi_smooth_limit(double k, int dim);

/// Far-field kernel i k^((n-3)/2) / (2 (2 pi i)^((n-1)/2)) exp(-i k xhat.y).
cplx phi_farfield(const Point& xhat, const Point& y, double k, int dim);

cplx incident_plane_wave(const Point& x, const WaveParams& w);
/// Bound on all second derivatives of a unit plane wave: k^2.
double incident_second_derivative_bound(const WaveParams& w);

/// Kernel of the singular integrals: log r for t = 0, r^-t for t > 0.
inline double phi_tilde(double r, double t) { return t == 0.0 ? std::log(r) : std::pow(r, -t); }

/// Phi_sing = c * phi_tilde with t = 0, c = -1/(2 pi) in 2D and t = 1,
/// c = 1/(4 pi) in 3D.
double singular_exponent(int dim);
double singular_coefficient(int dim);

}  // namespace fiem
