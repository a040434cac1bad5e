#include "fiem/oracles/bessel_series.hpp"

#include <cmath>
#include <stdexcept>

#include <boost/multiprecision/mpfr.hpp>

namespace fiem::oracles {

BesselReference bessel_series_reference(double z) {
    using boost::multiprecision::mpfr_float;
    if (!(z > 0.0)) throw std::domain_error("z must be positive");
    // largest series term ~ e^z; keep 40 digits beyond it
    const auto digits = static_cast<unsigned>(40.0 + z / std::log(10.0));
    mpfr_float::default_precision(digits);

    const mpfr_float x(z);
    const mpfr_float q = x * x / 4;
    mpfr_float term = 1, j0 = 1, tail = 0, harmonic = 0;
    const mpfr_float eps = boost::multiprecision::pow(mpfr_float(10), -static_cast<int>(digits));
    for (long k = 1;; ++k) {
        term *= -q / (k * k);
        harmonic += mpfr_float(1) / k;
        j0 += term;
        tail -= harmonic * term;
        if (k > q && abs(term) * harmonic < eps) break;
    }
    mpfr_float pi, gamma;
    mpfr_const_pi(pi.backend().data(), MPFR_RNDN);
    mpfr_const_euler(gamma.backend().data(), MPFR_RNDN);
    const mpfr_float y0 = 2 / pi * ((log(x / 2) + gamma) * j0 + tail);
    return {j0.convert_to<double>(), y0.convert_to<double>()};
}

}  // namespace fiem::oracles
