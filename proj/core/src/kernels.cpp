#include "fiem/kernels.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fiem/special_functions.hpp"

namespace fiem {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double series_threshold = 1e-2;

void check_dim(int dim) {
    if (dim != 2 && dim != 3) throw std::invalid_argument("ambient dimension must be 2 or 3");
}

}  // namespace

WaveParams::WaveParams(double k_, const Point& theta_, int dim_) : k(k_), theta(theta_), dim(dim_) {
    check_dim(dim);
    if (!(k > 0.0)) throw std::invalid_argument("wavenumber must be positive");
    if (dim == 2 && theta(2) != 0.0) throw std::invalid_argument("2D incidence direction must have zero z component");
    if (std::abs(theta.norm() - 1.0) > 1e-14) throw std::invalid_argument("incidence direction must be a unit vector");
}

cplx phi_r(double r, double k, int dim) {
    if (!(r > 0.0)) throw std::domain_error("phi is singular at x = y");
    if (dim == 3) return std::polar(1.0 / (4.0 * pi * r), k * r);
    check_dim(dim);
    return cplx(0.0, 0.25) * hankel0_h1(k * r);
}

cplx phi(const Point& x, const Point& y, double k, int dim) { return phi_r((x - y).norm(), k, dim); }

double phi_sing_r(double r, int dim) {
    if (!(r > 0.0)) throw std::domain_error("phi_sing is singular at x = y");
    if (dim == 3) return 1.0 / (4.0 * pi * r);
    check_dim(dim);
    return -std::log(r) / (2.0 * pi);
}

double phi_sing(const Point& x, const Point& y, int dim) { return phi_sing_r((x - y).norm(), dim); }

cplx phi_smooth_limit(double k, int dim) {
    if (dim == 3) return {0.0, k / (4.0 * pi)};
    check_dim(dim);
    return {-(std::log(0.5 * k) + euler_gamma) / (2.0 * pi), 0.25};
}

cplx phi_smooth_r(double r, double k, int dim) {
    check_dim(dim);
    if (r == 0.0) return phi_smooth_limit(k, dim);
    const double kr = k * r;
    if (kr >= series_threshold) {
        if (dim == 3) {
            // (e^{ikr} - 1)/(4 pi r) with cos - 1 written to avoid cancellation
            const double s = std::sin(0.5 * kr);
            return cplx(-2.0 * s * s, std::sin(kr)) / (4.0 * pi * r);
        }
        const auto b = bessel_jy0(kr);
        return cplx(-0.25 * b.y0 + std::log(r) / (2.0 * pi), 0.25 * b.j0);
    }
    const double q = 0.25 * kr * kr;
    if (dim == 3) {
        // sum_{j>=1} (ikr)^j / j! / (4 pi r)
        cplx term(1.0, 0.0), sum(0.0, 0.0);
        for (int j = 1; j < 30; ++j) {
            term *= cplx(0.0, kr) / static_cast<double>(j);
            sum += term;
            if (std::abs(term) < 1e-18 * std::abs(sum)) break;
        }
        return sum / (4.0 * pi * r);
    }
    // J0 series, its complement 1 - J0 and the harmonic-number series of Y0
    double term = 1.0, one_minus_j0 = 0.0, tail = 0.0, harmonic = 0.0;
    for (int j = 1; j < 30; ++j) {
        term *= -q / (static_cast<double>(j) * j);
        harmonic += 1.0 / j;
        one_minus_j0 -= term;
        tail -= harmonic * term;
        if (std::abs(term) < 1e-20) break;
    }
    const double j0 = 1.0 - one_minus_j0;
    const double re = -(std::log(0.5 * k) + euler_gamma) * j0 / (2.0 * pi) + std::log(r) * one_minus_j0 / (2.0 * pi) -
                      tail / (2.0 * pi);
    return {re, 0.25 * j0};
}

cplx phi_smooth(const Point& x, const Point& y, double k, int dim) { return phi_smooth_r((x - y).norm(), k, dim); }

cplx phi_farfield(const Point& xhat, const Point& y, double k, int dim) {
    const cplx phase = std::polar(1.0, -k * xhat.dot(y));
    if (dim == 3) return phase / (4.0 * pi);
    check_dim(dim);
    // i / (2 sqrt(2 pi i k)) = e^{i pi/4} / (2 sqrt(2 pi k))
    return std::polar(1.0 / (2.0 * std::sqrt(2.0 * pi * k)), 0.25 * pi) * phase;
}

cplx incident_plane_wave(const Point& x, const WaveParams& w) { return std::polar(1.0, w.k * w.theta.dot(x)); }

double incident_second_derivative_bound(const WaveParams& w) { return w.k * w.k; }

double singular_exponent(int dim) {
    check_dim(dim);
    return dim == 2 ? 0.0 : 1.0;
}

double singular_coefficient(int dim) {
    check_dim(dim);
    return dim == 2 ? -1.0 / (2.0 * pi) : 1.0 / (4.0 * pi);
}

}  // namespace fiem
