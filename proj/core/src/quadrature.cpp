#include "fiem/quadrature.hpp"

#include <cmath>
#include <stdexcept>

#include "fiem/mesh.hpp"

namespace fiem {

double BarycentreRule::total_weight() const {
    // Neumaier summation; rules can hold ~1e6 equal weights
    double s = 0.0, c = 0.0;
    for (double w : weights) {
        const double t = s + w;
        c += std::abs(s) >= std::abs(w) ? (s - t) + w : (w - t) + s;
        s = t;
    }
    return s + c;
}

ReferenceRule reference_rule(const IFSAttractor& ifs, double h_rel) {
    if (!(h_rel > 0.0)) throw std::invalid_argument("quadrature width h_Q must be positive");
    ReferenceRule ref;
    ref.h_rel = h_rel;
    const Point c = ifs.barycentre();
    for (const auto& u : subdivide(ifs, {}, h_rel)) {
        const auto sub = ifs.subattractor(u);
        ref.nodes.push_back(sub.map(c));
        ref.weights.push_back(sub.mu / ifs.measure_total());
    }
    return ref;
}

BarycentreRule map_rule(const IFSAttractor& ifs, const ReferenceRule& ref, const VectorIndex& m, double h_q) {
    const auto sub = ifs.subattractor(m);
    BarycentreRule rule;
    rule.owner = m;
    rule.h_q = h_q;
    rule.nodes.reserve(ref.nodes.size());
    rule.weights.reserve(ref.nodes.size());
    for (std::size_t i = 0; i < ref.nodes.size(); ++i) {
        rule.nodes.push_back(sub.map(ref.nodes[i]));
        rule.weights.push_back(sub.mu * ref.weights[i]);
    }
    return rule;
}

BarycentreRule barycentre_rule(const IFSAttractor& ifs, const VectorIndex& m, double h_q) {
    if (!(h_q > 0.0)) throw std::invalid_argument("quadrature width h_Q must be positive");
    return map_rule(ifs, reference_rule(ifs, h_q / ifs.rho_of(m)), m, h_q);
}

BarycentreRule RuleCache::rule(const VectorIndex& m, double h_q) {
    if (!(h_q > 0.0)) throw std::invalid_argument("quadrature width h_Q must be positive");
    const double h_rel = h_q / ifs_->rho_of(m);
    // widths equal to ~1e-13 relative share a rule
    const auto key = std::llround(std::log(h_rel) * 1e13);
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(key, reference_rule(*ifs_, h_rel)).first;
    return map_rule(*ifs_, it->second, m, h_q);
}

}  // namespace fiem
