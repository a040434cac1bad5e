#pragma once

// Composite barycentre rules on self-similar sets and their tensor products.

#include <map>
#include <vector>

#include "fiem/ifs.hpp"

namespace fiem {

struct BarycentreRule {
    std::vector<Point> nodes;
    std::vector<double> weights;
    VectorIndex owner;
    double h_q = 0.0;

    std::size_t size() const { return nodes.size(); }
    double total_weight() const;
};

/// Rule on Gamma itself with nodes s_u(barycentre) over the subdivision of
/// Gamma at relative width h_rel and weights p_u (summing to one).
struct ReferenceRule {
    std::vector<Point> nodes;
    std::vector<double> weights;
    double h_rel = 0.0;
};

ReferenceRule reference_rule(const IFSAttractor& ifs, double h_rel);

/// Nodes are the barycentres of the L_{h_Q} subdivision of Gamma_m, weights
/// their measures. h_Q >= diam(Gamma_m) gives the one-point rule.
BarycentreRule barycentre_rule(const IFSAttractor& ifs, const VectorIndex& m, double h_q);

/// Maps a reference rule onto Gamma_m.
BarycentreRule map_rule(const IFSAttractor& ifs, const ReferenceRule& ref, const VectorIndex& m, double h_q);

/// Memoises reference rules by relative width. Not thread-safe.
class RuleCache {
public:
    explicit RuleCache(const IFSAttractor& ifs) : ifs_(&ifs) {}
    BarycentreRule rule(const VectorIndex& m, double h_q);
    const IFSAttractor& attractor() const { return *ifs_; }

private:
    const IFSAttractor* ifs_;
    std::map<long long, ReferenceRule> cache_;
};

template <class Function>
auto integrate(const BarycentreRule& rule, Function&& f) -> decltype(f(rule.nodes[0])) {
    decltype(f(rule.nodes[0])) sum{};
    for (std::size_t i = 0; i < rule.size(); ++i) sum += rule.weights[i] * f(rule.nodes[i]);
    return sum;
}

/// Tensor-product barycentre sum of kernel(x, y) over Gamma_m x Gamma_m'.
template <class Kernel>
auto double_regular(const BarycentreRule& a, const BarycentreRule& b, Kernel&& kernel)
    -> decltype(kernel(a.nodes[0], b.nodes[0])) {
    using T = decltype(kernel(a.nodes[0], b.nodes[0]));
    T total{};
    for (std::size_t i = 0; i < a.size(); ++i) {
        T row{};
        for (std::size_t j = 0; j < b.size(); ++j) row += b.weights[j] * kernel(a.nodes[i], b.nodes[j]);
        total += a.weights[i] * row;
    }
    return total;
}

template <class Kernel>
auto double_regular(const IFSAttractor& ifs, const VectorIndex& m, const VectorIndex& mp, double h_q, Kernel&& kernel) {
    return double_regular(barycentre_rule(ifs, m, h_q), barycentre_rule(ifs, mp, h_q), kernel);
}

}  // namespace fiem
