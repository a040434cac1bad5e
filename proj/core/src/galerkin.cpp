#include "fiem/galerkin.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <istream>
#include <numbers>
#include <ostream>

#include "fiem/geometry.hpp"
#include "fiem/special_functions.hpp"

namespace fiem {

namespace {

constexpr double pi = std::numbers::pi;
constexpr int max_similarity_depth = 8;

cplx regular_phi(const ElementNodes& a, const ElementNodes& b, double k, int dim) {
    cplx total = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double re = 0.0, im = 0.0;
        for (std::size_t j = 0; j < b.size(); ++j) {
            const double dx = a.x[i] - b.x[j], dy = a.y[i] - b.y[j], dz = a.z[i] - b.z[j];
            const double r = std::sqrt(dx * dx + dy * dy + dz * dz);
            if (dim == 3) {
                const double f = b.w[j] / r;
                re += f * std::cos(k * r);
                im += f * std::sin(k * r);
            } else {
                const auto h = bessel_jy0(k * r);
                re -= b.w[j] * h.y0;
                im += b.w[j] * h.j0;
            }
        }
        total += a.w[i] * cplx(re, im);
    }
    // 3D: e^{ikr}/(4 pi r); 2D: (i/4)(J0 + i Y0) = (-Y0 + i J0)/4
    return dim == 3 ? total / (4.0 * pi) : 0.25 * total;
}

bool singular_pair(const Mesh& mesh, std::size_t i, std::size_t j) {
    const auto& a = mesh[i];
    const auto& b = mesh[j];
    if (a.block != b.block) return false;
    if (i == j) return true;
    const auto& part = mesh.attractor(a);
    if (is_disjoint(part.disjointness())) return false;
    return elements_touch(part, a.index, b.index);
}

template <class T>
void put(std::ostream& out, T value) {
    static_assert(std::endian::native == std::endian::little, "binary dumps assume a little-endian host");
    out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <class T>
T get(std::istream& in) {
    T value{};
    in.read(reinterpret_cast<char*>(&value), sizeof(T));
    if (!in) throw std::runtime_error("truncated system dump");
    return value;
}

}  // namespace

double default_cq(const ScattererUnion& scatterer, bool high_k) {
    double r = 0.0;
    for (const auto& p : scatterer.parts()) r = std::max(r, p.max_rho());
    return high_k ? std::pow(r, 4) : r * r;
}

ElementNodes flatten(const BarycentreRule& rule) {
    ElementNodes n;
    for (std::size_t i = 0; i < rule.size(); ++i) {
        n.x.push_back(rule.nodes[i](0));
        n.y.push_back(rule.nodes[i](1));
        n.z.push_back(rule.nodes[i](2));
        n.w.push_back(rule.weights[i]);
    }
    return n;
}

std::vector<BarycentreRule> element_rules(const Mesh& mesh, double h_q) {
    std::vector<RuleCache> caches;
    for (const auto& p : mesh.scatterer().parts()) caches.emplace_back(p);
    std::vector<BarycentreRule> rules;
    rules.reserve(mesh.size());
    for (const auto& e : mesh.elements()) rules.push_back(caches[static_cast<std::size_t>(e.block)].rule(e.index, h_q));
    return rules;
}

FundamentalSet block_fundamentals(const Mesh& mesh, std::size_t block, double h_q,
                                  const std::vector<IndexPair>& seeds, const FundamentalSource& source) {
    const auto& part = mesh.scatterer().part(block);
    const double t = singular_exponent(part.ambient_dim());
    const double width = h_q / mesh.h() * part.diameter();
    if (source && seeds.empty()) return source(part, t, width);
    return similarity_reduce(part, t, width, max_similarity_depth, seeds);
}

GalerkinSystem assemble(const Mesh& mesh, const WaveParams& wave, double c_q, const FundamentalSource& source) {
    if (!(c_q > 0.0) || c_q > 1.0) throw std::invalid_argument("C_Q must lie in (0, 1] so that h_Q <= h");
    if (wave.dim != mesh.ambient_dim()) throw std::invalid_argument("wave and mesh dimensions differ");
    const double h_q = c_q * mesh.h();
    const auto n = static_cast<Eigen::Index>(mesh.size());
    const int dim = mesh.ambient_dim();

    const auto rules = element_rules(mesh, h_q);
    std::vector<ElementNodes> nodes;
    for (const auto& r : rules) nodes.push_back(flatten(r));

    std::vector<std::optional<FundamentalSet>> fundamentals(mesh.scatterer().size());
    auto fundamentals_of = [&](std::size_t block) -> const FundamentalSet& {
        if (!fundamentals[block]) fundamentals[block] = block_fundamentals(mesh, block, h_q, {}, source);
        return *fundamentals[block];
    };

    GalerkinSystem sys{Eigen::MatrixXcd(n, n), Eigen::VectorXcd(n), mesh, wave, h_q, 0};
    std::vector<double> scale(mesh.size());
    for (std::size_t i = 0; i < mesh.size(); ++i) scale[i] = 1.0 / std::sqrt(mesh[i].mu);

    for (std::size_t i = 0; i < mesh.size(); ++i) {
        for (std::size_t j = i; j < mesh.size(); ++j) {
            cplx value;
            if (singular_pair(mesh, i, j)) {
                value = galerkin_singular_entry(rules[i], rules[j], wave.k,
                                                fundamentals_of(static_cast<std::size_t>(mesh[i].block)));
                ++sys.singular_pairs;
            } else {
                value = regular_phi(nodes[i], nodes[j], wave.k, dim);
            }
            value *= scale[i] * scale[j];
            sys.A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = value;
            sys.A(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = value;
        }
        const cplx load = integrate(rules[i], [&](const Point& x) { return incident_plane_wave(x, wave); });
        sys.b(static_cast<Eigen::Index>(i)) = -scale[i] * load;
    }
    return sys;
}

Eigen::VectorXcd solve_dense(const Eigen::MatrixXcd& A, const Eigen::VectorXcd& b, double* residual) {
    if (A.rows() != A.cols() || A.rows() != b.size()) throw std::invalid_argument("system dimensions do not match");
    const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
    const double norm = A.cwiseAbs().rowwise().sum().maxCoeff();
    const double pivot = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
    if (!(pivot >= 1e-14 * norm))
        throw SingularMatrix("Galerkin matrix is numerically singular (pivot " + std::to_string(pivot) +
                             "); k may be at or near a resonance where the integral equation is not uniquely "
                             "solvable, or the mesh is degenerate");
    Eigen::VectorXcd c = lu.solve(b);
    const double bn = b.norm();
    const double res = bn == 0.0 ? (A * c).norm() : (A * c - b).norm() / bn;
    if (residual) *residual = res;
    if (!(res <= 1e-10)) throw NumericalFailure("linear solve residual " + std::to_string(res) + " exceeds 1e-10");
    return c;
}

DensitySolution solve(const GalerkinSystem& system) {
    double residual = 0.0;
    Eigen::VectorXcd c = solve_dense(system.A, system.b, &residual);
    return {std::move(c), system.mesh, system.wave, system.h_q, residual};
}

double boundary_residual(const DensitySolution& solution, int sample_depth, double amplitude) {
    const Mesh& mesh = solution.mesh;
    const int dim = mesh.ambient_dim();
    const double k = solution.wave.k;
    const double rel = solution.h_q / mesh.h();

    struct Sample {
        std::size_t element;
        VectorIndex index;
    };
    std::vector<Sample> samples;
    for (std::size_t i = 0; i < mesh.size(); ++i) {
        const auto& e = mesh[i];
        const auto& part = mesh.attractor(e);
        const int extra = std::max(0, sample_depth - static_cast<int>(e.index.length()));
        std::vector<VectorIndex> cells{e.index};
        for (int l = 0; l < extra; ++l) {
            std::vector<VectorIndex> next;
            for (const auto& c : cells)
                for (int m = 1; m <= static_cast<int>(part.size()); ++m) next.push_back(c.child(m));
            cells = std::move(next);
        }
        for (auto& c : cells) samples.push_back({i, std::move(c)});
    }

    // touching (sample, element) pairs per block, resolved by one seeded reduction each
    auto touching = [&](const Sample& s, std::size_t j) {
        const auto& a = mesh[s.element];
        const auto& b = mesh[j];
        if (a.block != b.block) return false;
        if (s.element == j) return true;
        const auto& part = mesh.attractor(a);
        return !is_disjoint(part.disjointness()) && elements_touch(part, s.index, b.index);
    };
    std::vector<std::vector<IndexPair>> seeds(mesh.scatterer().size());
    for (const auto& s : samples)
        for (std::size_t j = 0; j < mesh.size(); ++j)
            if (touching(s, j)) seeds[static_cast<std::size_t>(mesh[j].block)].emplace_back(s.index, mesh[j].index);
    std::vector<std::optional<FundamentalSet>> fundamentals(mesh.scatterer().size());
    for (std::size_t b = 0; b < seeds.size(); ++b)
        if (!seeds[b].empty()) fundamentals[b] = block_fundamentals(mesh, b, solution.h_q, seeds[b]);

    const auto rules = element_rules(mesh, solution.h_q);
    std::vector<ElementNodes> nodes;
    for (const auto& r : rules) nodes.push_back(flatten(r));
    std::vector<RuleCache> caches;
    for (const auto& p : mesh.scatterer().parts()) caches.emplace_back(p);

    double worst = 0.0;
    for (const auto& s : samples) {
        const auto& part = mesh.attractor(mesh[s.element]);
        const double mu_s = part.mu_of(s.index);
        const auto rule_s = caches[static_cast<std::size_t>(mesh[s.element].block)].rule(
            s.index, rel * part.diameter_of(s.index));
        const auto nodes_s = flatten(rule_s);
        cplx value = amplitude * integrate(rule_s, [&](const Point& x) { return incident_plane_wave(x, solution.wave); });
        for (std::size_t j = 0; j < mesh.size(); ++j) {
            const cplx cj = solution.coeffs(static_cast<Eigen::Index>(j));
            if (cj == 0.0) continue;
            cplx integral;
            if (touching(s, j)) {
                const auto& fs = *fundamentals[static_cast<std::size_t>(mesh[j].block)];
                integral = galerkin_singular_entry(rule_s, rules[j], k, fs);
            } else {
                integral = regular_phi(nodes_s, nodes[j], k, dim);
            }
            value += cj / std::sqrt(mesh[j].mu) * integral;
        }
        worst = std::max(worst, std::abs(value) / mu_s);
    }
    return worst;
}

void write_system_binary(const GalerkinSystem& system, std::ostream& out) {
    const auto n = system.A.rows();
    put<std::int64_t>(out, static_cast<std::int64_t>(n));
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            put<double>(out, system.A(i, j).real());
            put<double>(out, system.A(i, j).imag());
        }
    for (Eigen::Index i = 0; i < n; ++i) {
        put<double>(out, system.b(i).real());
        put<double>(out, system.b(i).imag());
    }
}

void read_system_binary(std::istream& in, Eigen::MatrixXcd& A, Eigen::VectorXcd& b) {
    const auto n = static_cast<Eigen::Index>(get<std::int64_t>(in));
    if (n < 0) throw std::runtime_error("corrupt system dump");
    A.resize(n, n);
    b.resize(n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            const double re = get<double>(in);
            A(i, j) = cplx(re, get<double>(in));
        }
    for (Eigen::Index i = 0; i < n; ++i) {
        const double re = get<double>(in);
        b(i) = cplx(re, get<double>(in));
    }
}

}  // namespace fiem
