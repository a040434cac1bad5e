#pragma once

// Named example attractors with analytic diameters, declared symmetry groups
// and disjointness classes.

#include <string_view>
#include <vector>

#include "fiem/ifs.hpp"

namespace fiem::library {

/// Middle-(1-2 rho) Cantor set C x {0} in R^2 (R^3 when lifted), 0 < rho <= 1/2.
IFSAttractor cantor_set(double rho, bool lift = false);

/// Cantor dust C^n in R^n, n in {2, 3}, 0 < rho <= 1/2.
IFSAttractor cantor_dust(double rho, int n, bool lift = false);

/// Koch curve from (0,0) to (1,0), bump towards +y.
IFSAttractor koch_curve(bool lift = false);

/// Solid Koch snowflake built on the triangle (0,0), (1,0), (1/2,-sqrt(3)/2):
/// one central copy scaled 1/sqrt(3) and rotated by pi/6 plus six corner
/// copies scaled 1/3. Tips lie at distance 1/sqrt(3) from the centre.
IFSAttractor koch_snowflake();

/// The boundary of koch_snowflake() as three Koch curves (a union, not a
/// single attractor).
std::vector<IFSAttractor> koch_snowflake_boundary();

/// Sierpinski tetrahedron s_i(x) = x_i + rho (x - x_i), 0 < rho <= 1/2.
IFSAttractor sierpinski_tetrahedron(double rho);

/// Centre of koch_snowflake().
Point koch_snowflake_centre();

}  // namespace fiem::library
