#pragma once

// Reference values for singular double integrals by direct subdivision:
// one-point sums over all sub-element pairs whose bounding balls are
// separated, extrapolated in the subdivision level.

#include <vector>

#include "fiem/ifs.hpp"

namespace fiem::oracles {

/// Sum over sub-element pairs of Gamma_m x Gamma_m' with diam <= h of
/// mu_u mu_v phi_t(|b_u - b_v|), skipping pairs with overlapping bounding balls.
double excluded_diagonal_sum(const IFSAttractor& ifs, const VectorIndex& m, const VectorIndex& mp, double t, double h);

struct Extrapolated {
    double value = 0.0;
    double change = 0.0;  ///< |value - extrapolation from one level fewer|
    std::vector<double> sums;
};

/// Richardson extrapolation of excluded_diagonal_sum over levels
/// first..first+levels-1, with widths ratio^l times the pair scale and error
/// terms alpha^l (plus l alpha^l for t = 0), alpha = ratio^(d-t).
Extrapolated brute_force_integral(const IFSAttractor& ifs, const VectorIndex& m, const VectorIndex& mp, double t,
                                  int first, int levels, double ratio);

}  // namespace fiem::oracles
