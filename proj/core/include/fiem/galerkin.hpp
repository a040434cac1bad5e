#pragma once

// Galerkin discretisation of the single-layer integral equation in the
// mu^(-1/2)-normalised piecewise-constant basis.

#include <complex>
#include <functional>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "fiem/errors.hpp"
#include "fiem/kernels.hpp"
#include "fiem/mesh.hpp"
#include "fiem/singquad.hpp"

namespace fiem {

/// Default C_Q: max rho_m^2 over all parts, or max rho_m^4 for high wavenumbers.
double default_cq(const ScattererUnion& scatterer, bool high_k = false);

/// Quadrature nodes of one element, stored by coordinate.
struct ElementNodes {
    std::vector<double> x, y, z, w;
    std::size_t size() const { return w.size(); }
};

ElementNodes flatten(const BarycentreRule& rule);

/// Composite barycentre rules on every mesh element for width h_q.
std::vector<BarycentreRule> element_rules(const Mesh& mesh, double h_q);

/// Supplies the unseeded fundamental set of (part, t, width); lets callers
/// cache sets between runs. Empty means similarity_reduce.
using FundamentalSource = std::function<FundamentalSet(const IFSAttractor& part, double t, double h_q)>;

/// Fundamental singular integrals of one part of the mesh's scatterer, with
/// width (h_q / h) diam(part) at the scale of the part so that element pairs
/// of diameter h see width h_q. Seeded calls bypass `source`.
FundamentalSet block_fundamentals(const Mesh& mesh, std::size_t block, double h_q,
                                  const std::vector<IndexPair>& seeds = {}, const FundamentalSource& source = {});

struct GalerkinSystem {
    Eigen::MatrixXcd A;
    Eigen::VectorXcd b;
    Mesh mesh;
    WaveParams wave;
    double h_q = 0.0;
    std::size_t singular_pairs = 0;  ///< upper-triangle entries resolved by similarity
};

/// Assembles A and b with h_Q = c_q h. Only i <= j is computed; A(j,i) copies
/// A(i,j). Pairs from different parts of a union are always regular.
GalerkinSystem assemble(const Mesh& mesh, const WaveParams& wave, double c_q,
                        const FundamentalSource& source = {});

struct DensitySolution {
    Eigen::VectorXcd coeffs;
    Mesh mesh;
    WaveParams wave;
    double h_q = 0.0;
    double residual = 0.0;  ///< ||A c - b|| / ||b||
};

/// Dense LU with row pivoting. Throws SingularMatrix when a pivot falls below
/// 1e-14 ||A|| and NumericalFailure when the residual exceeds 1e-10.
DensitySolution solve(const GalerkinSystem& system);

/// Solves A c = b for arbitrary data (same checks as above).
Eigen::VectorXcd solve_dense(const Eigen::MatrixXcd& A, const Eigen::VectorXcd& b, double* residual = nullptr);

/// max over sample cells S (indices of length sample_depth inside each
/// element) of |mean_S (u_N + amplitude * u^i)|, with single-layer integrals
/// over touching pairs resolved by the singular engine.
double boundary_residual(const DensitySolution& solution, int sample_depth, double amplitude = 1.0);

/// Little-endian: int64 N, then A row-major as interleaved (re, im), then b.
void write_system_binary(const GalerkinSystem& system, std::ostream& out);
void read_system_binary(std::istream& in, Eigen::MatrixXcd& A, Eigen::VectorXcd& b);

}  // namespace fiem
