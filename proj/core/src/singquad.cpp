#include "fiem/singquad.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include <nlohmann/json.hpp>

#include "fiem/geometry.hpp"
#include "fiem/kernels.hpp"
#include "fiem/library.hpp"

namespace fiem {

namespace {

void check_exponent(const IFSAttractor& ifs, double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("kernel exponent t must be non-negative");
    if (t >= ifs.hausdorff_dim())
        throw std::invalid_argument("kernel exponent t must be below the Hausdorff dimension (integral is infinite)");
}

struct TildeKernel {
    double t;
    double operator()(const Point& x, const Point& y) const { return phi_tilde((x - y).norm(), t); }
};

bool same_map(const Similarity& a, const Similarity& b, double tol, double length_scale) {
    if (std::abs(a.rho() - b.rho()) > tol * std::max(a.rho(), b.rho())) return false;
    if ((a.rotation() - b.rotation()).cwiseAbs().maxCoeff() > tol) return false;
    return (a.translation() - b.translation()).cwiseAbs().maxCoeff() <= tol * length_scale;
}

double pair_scale(const IFSAttractor& ifs, const IndexPair& p) {
    return std::max(ifs.rho_of(p.first), ifs.rho_of(p.second));
}

IndexPair strip_common_prefix(const IndexPair& p) {
    const std::size_t k = p.first.common_prefix(p.second);
    return {p.first.suffix(k), p.second.suffix(k)};
}

bool overlapping(const VectorIndex& a, const VectorIndex& b) { return a.is_prefix_of(b) || b.is_prefix_of(a); }

}  // namespace

double vartheta(double t, double measure_total) { return t == 0.0 ? measure_total * measure_total : 0.0; }

std::optional<double> similarity_check(const IFSAttractor& ifs, const VectorIndex& m, const VectorIndex& mp,
                                       const VectorIndex& n, const VectorIndex& np, const Isometry& t_map,
                                       const Isometry& tp_map, double tol) {
    const auto sm = ifs.subattractor(m).map, smp = ifs.subattractor(mp).map;
    const auto sn = ifs.subattractor(n).map, snp = ifs.subattractor(np).map;
    const Similarity a = sm * t_map * sn.inverse();
    const Similarity b = smp * tp_map * snp.inverse();
    if (!same_map(a, b, tol, ifs.diameter())) return std::nullopt;
    return a.rho();
}

double proportional_value(double known, double varrho, double t, double d, double rho_m, double rho_mp,
                          double measure_total) {
    if (t >= d) throw std::invalid_argument("kernel exponent t must be below the Hausdorff dimension");
    return std::pow(varrho, 2.0 * d - t) * known +
           vartheta(t, measure_total) * std::pow(rho_m * rho_mp, d) * std::log(varrho);
}

double energy_disjoint(const IFSAttractor& ifs, double t, double h_q) {
    check_exponent(ifs, t);
    const double d = ifs.hausdorff_dim();
    const int M = static_cast<int>(ifs.size());
    RuleCache cache(ifs);
    std::vector<BarycentreRule> rules;
    for (int i = 1; i <= M; ++i) rules.push_back(cache.rule(VectorIndex{i}, h_q));
    double regular = 0.0, denom = 1.0, correction = 0.0;
    for (int i = 0; i < M; ++i) {
        const double r = ifs.maps()[static_cast<std::size_t>(i)].rho();
        denom -= std::pow(r, 2.0 * d - t);
        correction += std::pow(r, 2.0 * d) * std::log(r);
        for (int j = 0; j < M; ++j)
            if (i != j)
                regular += double_regular(rules[static_cast<std::size_t>(i)], rules[static_cast<std::size_t>(j)],
                                          TildeKernel{t});
    }
    if (!(denom > 0.0)) throw std::domain_error("energy identity has a non-positive denominator");
    return (regular + vartheta(t, ifs.measure_total()) * correction) / denom;
}

// ---------------------------------------------------------------------------
// FundamentalSet

FundamentalSet::FundamentalSet(IFSAttractor ifs, double t, double h_q, std::vector<IndexPair> pairs,
                               std::vector<double> values, std::vector<SimilarityRule> rules)
    : ifs_(std::move(ifs)), t_(t), h_q_(h_q), pairs_(std::move(pairs)), values_(std::move(values)),
      rules_(std::move(rules)) {
    if (pairs_.size() != values_.size()) throw std::invalid_argument("fundamental pairs and values differ in length");
}

double FundamentalSet::apply_rule(const SimilarityRule& rule, double known) const {
    return std::pow(rule.varrho, 2.0 * ifs_.hausdorff_dim() - t_) * known + rule.log_correction;
}

std::optional<SimilarityRule> FundamentalSet::match(const VectorIndex& m, const VectorIndex& mp) const {
    const auto sm = ifs_.subattractor(m), smp = ifs_.subattractor(mp);
    const Point bm = sm.map(ifs_.barycentre()), bmp = smp.map(ifs_.barycentre());
    const double gap = (bm - bmp).norm();
    const double tol = 1e-10;
    const auto& group = ifs_.symmetry_group();

    for (std::size_t f = 0; f < pairs_.size(); ++f) {
        for (int orient = 0; orient < 2; ++orient) {
            const VectorIndex& n = orient ? pairs_[f].second : pairs_[f].first;
            const VectorIndex& np = orient ? pairs_[f].first : pairs_[f].second;
            const auto sn = ifs_.subattractor(n), snp = ifs_.subattractor(np);
            const double varrho = sm.rho / sn.rho;
            if (std::abs(varrho - smp.rho / snp.rho) > tol * varrho) continue;
            const double gap_n = (sn.map(ifs_.barycentre()) - snp.map(ifs_.barycentre())).norm();
            if (std::abs(gap - varrho * gap_n) > 1e-9 * ifs_.diameter()) continue;
            const Similarity sn_inv = sn.map.inverse(), snp_inv = snp.map.inverse();
            for (const auto& tm : group) {
                const Similarity a = sm.map * tm * sn_inv;
                for (const auto& tpm : group) {
                    const Similarity b = smp.map * tpm * snp_inv;
                    if (!same_map(a, b, tol, ifs_.diameter())) continue;
                    SimilarityRule rule{m, mp, f, a.rho(), 0.0};
                    rule.log_correction = vartheta(t_, ifs_.measure_total()) *
                                          std::pow(sm.rho * smp.rho, ifs_.hausdorff_dim()) * std::log(a.rho());
                    return rule;
                }
            }
        }
    }
    return std::nullopt;
}

double FundamentalSet::resolve(const VectorIndex& m, const VectorIndex& mp) const {
    const auto rule = match(m, mp);
    if (!rule)
        throw NoFiniteClosure("singular pair (" + m.to_string() + ", " + mp.to_string() +
                              ") is not similar to any fundamental integral");
    return apply(*rule);
}

std::string FundamentalSet::to_json() const {
    nlohmann::json j;
    j["attractor"] = ifs_.name();
    j["t"] = t_;
    j["h_q"] = h_q_;
    j["pairs"] = nlohmann::json::array();
    for (std::size_t i = 0; i < pairs_.size(); ++i)
        j["pairs"].push_back({{"m", pairs_[i].first.to_string()},
                              {"mp", pairs_[i].second.to_string()},
                              {"value", values_[i]}});
    j["rules"] = nlohmann::json::array();
    for (const auto& r : rules_)
        j["rules"].push_back({{"m", r.m.to_string()},
                              {"mp", r.mp.to_string()},
                              {"fundamental", r.fundamental},
                              {"varrho", r.varrho},
                              {"log_correction", r.log_correction}});
    return j.dump(2);
}

FundamentalSet FundamentalSet::from_json(const std::string& text, const IFSAttractor& ifs) {
    const auto j = nlohmann::json::parse(text);
    std::vector<IndexPair> pairs;
    std::vector<double> values;
    for (const auto& p : j.at("pairs")) {
        pairs.emplace_back(VectorIndex::parse(p.at("m").get<std::string>()),
                           VectorIndex::parse(p.at("mp").get<std::string>()));
        values.push_back(p.at("value").get<double>());
    }
    std::vector<SimilarityRule> rules;
    for (const auto& r : j.at("rules"))
        rules.push_back({VectorIndex::parse(r.at("m").get<std::string>()),
                         VectorIndex::parse(r.at("mp").get<std::string>()), r.at("fundamental").get<std::size_t>(),
                         r.at("varrho").get<double>(), r.at("log_correction").get<double>()});
    return FundamentalSet(ifs, j.at("t").get<double>(), j.at("h_q").get<double>(), std::move(pairs),
                          std::move(values), std::move(rules));
}

// ---------------------------------------------------------------------------
// Similarity reduction

FundamentalSet similarity_reduce(const IFSAttractor& ifs, double t, double h_q, int max_depth,
                                 const std::vector<IndexPair>& seeds) {
    check_exponent(ifs, t);
    if (!(h_q > 0.0)) throw std::invalid_argument("quadrature width h_Q must be positive");
    constexpr std::size_t max_fundamentals = 4000;

    // The set grows while it is being processed; values are filled in at the end.
    FundamentalSet work(ifs, t, h_q, {{VectorIndex{}, VectorIndex{}}}, {0.0});
    std::vector<IndexPair> pairs{{VectorIndex{}, VectorIndex{}}};
    auto add_fundamental = [&](const IndexPair& p) {
        if (static_cast<int>(std::max(p.first.length(), p.second.length())) > max_depth)
            throw NoFiniteClosure("no finite set of similar singular integrals up to depth " +
                                  std::to_string(max_depth) + " (pair " + p.first.to_string() + ", " +
                                  p.second.to_string() + ")");
        if (pairs.size() >= max_fundamentals) throw NoFiniteClosure("too many fundamental singular integrals");
        pairs.push_back(p);
        work = FundamentalSet(ifs, t, h_q, pairs, std::vector<double>(pairs.size(), 0.0));
        return pairs.size() - 1;
    };
    for (const auto& s : seeds) {
        const IndexPair p = strip_common_prefix(s);
        if (!work.match(p.first, p.second)) add_fundamental(p);
    }

    RuleCache cache(ifs);
    std::vector<std::vector<std::pair<std::size_t, double>>> coupling;  // (fundamental, varrho^(2d-t))
    std::vector<double> rhs;
    std::vector<SimilarityRule> rules;
    const double d = ifs.hausdorff_dim();
    const int M = static_cast<int>(ifs.size());

    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const IndexPair p = pairs[i];
        const double width = h_q * pair_scale(ifs, p);
        const double ra = ifs.rho_of(p.first), rb = ifs.rho_of(p.second);
        const bool split_a = ra >= rb * (1.0 - 1e-12);
        const bool split_b = rb >= ra * (1.0 - 1e-12);

        std::vector<IndexPair> children;
        for (int a = 1; a <= (split_a ? M : 1); ++a)
            for (int b = 1; b <= (split_b ? M : 1); ++b)
                children.emplace_back(split_a ? p.first.child(a) : p.first, split_b ? p.second.child(b) : p.second);

        std::vector<std::pair<std::size_t, double>> row;
        double regular = 0.0, log_terms = 0.0;
        for (const auto& [c, cp] : children) {
            const bool singular = overlapping(c, cp) || elements_touch(ifs, c, cp);
            if (!singular) {
                regular += double_regular(cache.rule(c, width), cache.rule(cp, width), TildeKernel{t});
                continue;
            }
            auto rule = work.match(c, cp);
            if (!rule) {
                const std::size_t f = add_fundamental(strip_common_prefix({c, cp}));
                rule = work.match(c, cp);
                if (!rule || rule->fundamental != f) throw std::logic_error("new fundamental failed to match itself");
            }
            row.emplace_back(rule->fundamental, std::pow(rule->varrho, 2.0 * d - t));
            log_terms += rule->log_correction;
            rules.push_back(*rule);
        }
        coupling.push_back(std::move(row));
        rhs.push_back(regular + log_terms);
    }

    const auto ns = static_cast<Eigen::Index>(pairs.size());
    Eigen::MatrixXd system = Eigen::MatrixXd::Identity(ns, ns);
    Eigen::VectorXd b(ns);
    for (Eigen::Index i = 0; i < ns; ++i) {
        b(i) = rhs[static_cast<std::size_t>(i)];
        for (const auto& [f, coef] : coupling[static_cast<std::size_t>(i)])
            system(i, static_cast<Eigen::Index>(f)) -= coef;
    }
    const Eigen::VectorXd values = system.fullPivLu().solve(b);
    return FundamentalSet(ifs, t, h_q, std::move(pairs), std::vector<double>(values.data(), values.data() + ns),
                          std::move(rules));
}

// ---------------------------------------------------------------------------
// Koch curve closed forms

KochRegularParts koch_regular_parts(const IFSAttractor& koch, double t, double h_q) {
    check_exponent(koch, t);
    RuleCache cache(koch);
    auto I = [&](const VectorIndex& m, const VectorIndex& mp, double width) {
        return double_regular(cache.rule(m, width), cache.rule(mp, width), TildeKernel{t});
    };
    const double w1 = h_q, w2 = h_q / 3.0;
    KochRegularParts r;
    r.r_gamma_gamma = 4.0 * I({1}, {3}, w1) + 2.0 * I({1}, {4}, w1);
    r.r12 = 2.0 * I({1, 1}, {2, 1}, w2) + 2.0 * I({1, 1}, {2, 2}, w2) + 2.0 * I({1, 1}, {2, 3}, w2) +
            I({1, 1}, {2, 4}, w2) + 2.0 * I({1, 2}, {2, 1}, w2) + 2.0 * I({1, 2}, {2, 2}, w2) +
            I({1, 2}, {2, 3}, w2) + 2.0 * I({1, 3}, {2, 1}, w2) + I({1, 3}, {2, 2}, w2);
    r.r23 = 4.0 * I({2, 1}, {3, 1}, w2) + 2.0 * I({2, 1}, {3, 2}, w2) + 2.0 * I({2, 1}, {3, 3}, w2) +
            2.0 * I({2, 1}, {3, 4}, w2) + 2.0 * I({2, 2}, {3, 1}, w2) + 2.0 * I({2, 3}, {3, 1}, w2) +
            I({2, 3}, {3, 2}, w2);
    return r;
}

FundamentalSet koch_fundamental(double t, double h_q, double measure_total) {
    const IFSAttractor koch = library::koch_curve().with_measure_total(measure_total);
    const auto r = koch_regular_parts(koch, t, h_q);
    const double th = vartheta(t, measure_total);
    const double log3 = std::log(3.0);
    const double sigma1 = 1.0 - std::pow(3.0, t) / 4.0;
    const double sigma2 = 1.0 - std::pow(3.0, t) / 16.0;
    const double i23 = (r.r23 - th * log3 / 256.0) / sigma2;
    const double i12 = (r.r12 - th * log3 / 256.0) / sigma2;
    const double igg =
        (r.r_gamma_gamma + (2.0 / sigma2) * (2.0 * r.r12 + r.r23) - th * (32.0 + 3.0 / sigma2) * log3 / 128.0) /
        sigma1;
    return FundamentalSet(koch, t, h_q, {{{}, {}}, {{1}, {2}}, {{2}, {3}}}, {igg, i12, i23});
}

// ---------------------------------------------------------------------------

std::complex<double> galerkin_singular_entry(const BarycentreRule& rule_m, const BarycentreRule& rule_mp, double k,
                                             const FundamentalSet& fundamentals) {
    const int dim = fundamentals.attractor().ambient_dim();
    if (fundamentals.t() != singular_exponent(dim))
        throw std::invalid_argument("fundamental integrals were computed for the wrong kernel exponent");
    const auto smooth = double_regular(rule_m, rule_mp, [&](const Point& x, const Point& y) {
        return phi_smooth_r((x - y).norm(), k, dim);
    });
    return smooth + singular_coefficient(dim) * fundamentals.resolve(rule_m.owner, rule_mp.owner);
}

std::complex<double> galerkin_singular_entry(const IFSAttractor& ifs, double k, const VectorIndex& m,
                                             const VectorIndex& mp, double h_q, const FundamentalSet& fundamentals) {
    return galerkin_singular_entry(barycentre_rule(ifs, m, h_q), barycentre_rule(ifs, mp, h_q), k, fundamentals);
}

}  // namespace fiem
