#pragma once

// Singular double integrals I_{m,m'} = int_{Gamma_m} int_{Gamma_m'} phi_t(|x-y|)
// with phi_t(r) = log r (t = 0) or r^-t (t > 0), evaluated exactly up to the
// regular parts by self-similarity.

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fiem/errors.hpp"
#include "fiem/ifs.hpp"
#include "fiem/quadrature.hpp"

namespace fiem {

class NoFiniteClosure : public NumericalFailure {
public:
    using NumericalFailure::NumericalFailure;
};

using IndexPair = std::pair<VectorIndex, VectorIndex>;

/// H^d(Gamma)^2 for t = 0, zero otherwise.
double vartheta(double t, double measure_total);

/// Scaling ratio if s_m T s_n^-1 and s_m' T' s_n'^-1 coincide (coefficients
/// within `tol`), otherwise nothing.
std::optional<double> similarity_check(const IFSAttractor& ifs, const VectorIndex& m, const VectorIndex& mp,
                                       const VectorIndex& n, const VectorIndex& np, const Isometry& t_map,
                                       const Isometry& tp_map, double tol = 1e-10);

/// I_{m,m'} = varrho^(2d-t) I_{n,n'} + vartheta_t (rho_m rho_m')^d log(varrho).
double proportional_value(double known, double varrho, double t, double d, double rho_m, double rho_mp,
                          double measure_total);

/// Self-energy I_{Gamma,Gamma} of a disjoint attractor; regular cross terms by
/// the tensor barycentre rule with width h_q.
double energy_disjoint(const IFSAttractor& ifs, double t, double h_q);

/// One singular pair rewritten in terms of a fundamental integral.
struct SimilarityRule {
    VectorIndex m, mp;
    std::size_t fundamental = 0;
    double varrho = 1.0;
    double log_correction = 0.0;  ///< vartheta_t (rho_m rho_m')^d log(varrho)
};

class FundamentalSet {
public:
    FundamentalSet(IFSAttractor ifs, double t, double h_q, std::vector<IndexPair> pairs, std::vector<double> values,
                   std::vector<SimilarityRule> rules = {});

    const IFSAttractor& attractor() const { return ifs_; }
    double t() const { return t_; }
    /// Quadrature width for pairs at the scale of Gamma; a fundamental pair
    /// whose larger element has ratio rho uses rho * h_q.
    double h_q() const { return h_q_; }
    std::size_t size() const { return pairs_.size(); }
    const std::vector<IndexPair>& pairs() const { return pairs_; }
    const std::vector<double>& values() const { return values_; }
    const std::vector<SimilarityRule>& rules() const { return rules_; }
    double value(std::size_t i) const { return values_.at(i); }

    /// Earliest fundamental similar to (m, m'), trying both orientations and
    /// all pairs of symmetries.
    std::optional<SimilarityRule> match(const VectorIndex& m, const VectorIndex& mp) const;
    /// I_{m,m'}; throws NoFiniteClosure when no fundamental is similar.
    double resolve(const VectorIndex& m, const VectorIndex& mp) const;
    double apply(const SimilarityRule& rule) const { return apply_rule(rule, values_[rule.fundamental]); }

    std::string to_json() const;
    static FundamentalSet from_json(const std::string& text, const IFSAttractor& ifs);

private:
    double apply_rule(const SimilarityRule& rule, double known) const;

    IFSAttractor ifs_;
    double t_;
    double h_q_;
    std::vector<IndexPair> pairs_;
    std::vector<double> values_;
    std::vector<SimilarityRule> rules_;
};

/// Finds singular pairs similar to earlier ones while subdividing breadth
/// first from (0,0) and any seed pairs, then solves the resulting linear
/// system. Throws NoFiniteClosure when a new pair would exceed max_depth.
FundamentalSet similarity_reduce(const IFSAttractor& ifs, double t, double h_q, int max_depth = 8,
                                 const std::vector<IndexPair>& seeds = {});

struct KochRegularParts {
    double r_gamma_gamma = 0.0;
    double r12 = 0.0;
    double r23 = 0.0;
};

/// Regular sums of the Koch curve decomposition; R_{1,2} and R_{2,3} use width
/// h_q / 3 (their pairs live at scale 1/3).
KochRegularParts koch_regular_parts(const IFSAttractor& koch, double t, double h_q);

/// Closed forms for I_{Gamma,Gamma}, I_{1,2}, I_{2,3} of the Koch curve.
FundamentalSet koch_fundamental(double t, double h_q, double measure_total = 1.0);

/// int int Phi over Gamma_m x Gamma_m' for an intersecting pair: tensor rule on
/// Phi - Phi_sing plus the resolved singular integral.
std::complex<double> galerkin_singular_entry(const BarycentreRule& rule_m, const BarycentreRule& rule_mp, double k,
                                             const FundamentalSet& fundamentals);

std::complex<double> galerkin_singular_entry(const IFSAttractor& ifs, double k, const VectorIndex& m,
                                             const VectorIndex& mp, double h_q, const FundamentalSet& fundamentals);

}  // namespace fiem
