#include "fiem/special_functions.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace fiem {

namespace {

constexpr double pi = std::numbers::pi;

BesselJY series(double z) {
    const double q = 0.25 * z * z;
    double term = 1.0, j0 = 1.0, sum = 0.0, harmonic = 0.0;
    for (int k = 1; k < 200; ++k) {
        term *= -q / (static_cast<double>(k) * k);
        harmonic += 1.0 / k;
        j0 += term;
        sum -= harmonic * term;
        if (std::abs(term) * (1.0 + harmonic) < 1e-17 * (std::abs(j0) + 1e-300) && k > 2) break;
    }
    const double y0 = (2.0 / pi) * ((std::log(0.5 * z) + euler_gamma) * j0 + sum);
    return {j0, y0};
}

BesselJY miller(double z) {
    // start index well above z so the recurrence is dominated by J_n
    int n = 2 * (static_cast<int>(z) / 2) + 40;
    double jp1 = 0.0, jn = 1e-30, norm = 0.0, neumann = 0.0;
    std::vector<double> j(static_cast<std::size_t>(n) + 1, 0.0);
    j[static_cast<std::size_t>(n)] = jn;
    for (int m = n; m >= 1; --m) {
        const double jm1 = (2.0 * m / z) * jn - jp1;
        jp1 = jn;
        jn = jm1;
        j[static_cast<std::size_t>(m - 1)] = jn;
        if (std::abs(jn) > 1e250) {
            for (int i = m - 1; i <= n; ++i) j[static_cast<std::size_t>(i)] *= 1e-250;
            jn *= 1e-250;
            jp1 *= 1e-250;
        }
    }
    norm = j[0];
    for (int m = 2; m <= n; m += 2) norm += 2.0 * j[static_cast<std::size_t>(m)];
    for (int m = 2, s = -1; m <= n; m += 2, s = -s) neumann += s * j[static_cast<std::size_t>(m)] / (m / 2);
    const double j0 = j[0] / norm;
    const double y0 = (2.0 / pi) * (std::log(0.5 * z) + euler_gamma) * j0 - (4.0 / pi) * neumann / norm;
    return {j0, y0};
}

// P + iQ of the Hankel expansion H0(z) = sqrt(2/(pi z)) (P + iQ) e^{i(z - pi/4)}
std::complex<double> asymptotic_pq(double z) {
    double p = 1.0, q = 0.0, a = 1.0, last = 1.0;
    for (int k = 1; k < 200; ++k) {
        const double f = (2.0 * k - 1.0);
        a *= f * f / (8.0 * k * z);
        if (a > last) break;
        last = a;
        // a_k multiplies (-i)^k
        switch (k % 4) {
            case 1: q -= a; break;
            case 2: p -= a; break;
            case 3: q += a; break;
            default: p += a; break;
        }
        if (a < 1e-17) break;
    }
    return {p, q};
}

}  // namespace

BesselJY bessel_jy0(double z) {
    if (!(z > 0.0)) throw std::domain_error("Bessel functions of order zero need z > 0");
    if (z <= 8.0) return series(z);
    if (z <= 25.0) return miller(z);
    const std::complex<double> h = hankel0_h1(z);
    return {h.real(), h.imag()};
}

double bessel_j0(double z) { return bessel_jy0(z).j0; }
double bessel_y0(double z) { return bessel_jy0(z).y0; }

std::complex<double> hankel0_h1(double z) {
    if (!(z > 0.0)) throw std::domain_error("hankel0_h1 needs z > 0");
    if (z <= 25.0) {
        const auto b = bessel_jy0(z);
        return {b.j0, b.y0};
    }
    const double chi = z - 0.25 * pi;
    return std::sqrt(2.0 / (pi * z)) * asymptotic_pq(z) * std::complex<double>(std::cos(chi), std::sin(chi));
}

}  // namespace fiem
