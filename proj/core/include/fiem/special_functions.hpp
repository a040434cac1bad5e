#pragma once

// Bessel functions of order zero for real positive argument.

#include <complex>

namespace fiem {

inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;

struct BesselJY {
    double j0 = 0.0;
    double y0 = 0.0;
};

/// J0(z) and Y0(z), z > 0. Power series up to z = 8, Miller's backward
/// recurrence with the Neumann series for Y0 on (8, 25], Hankel's asymptotic
/// expansion beyond.
BesselJY bessel_jy0(double z);

double bessel_j0(double z);
double bessel_y0(double z);

/// H0^(1)(z) = J0(z) + i Y0(z), z > 0.
std::complex<double> hankel0_h1(double z);

}  // namespace fiem
