#include "fiem/oracles/brute_force.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "fiem/mesh.hpp"

namespace fiem::oracles {

namespace {

struct Cell {
    Point centre;
    double radius;
    double mu;
};

std::vector<Cell> cells(const IFSAttractor& ifs, const VectorIndex& root, double h) {
    std::vector<Cell> out;
    for (const auto& u : subdivide(ifs, root, h)) {
        const auto sub = ifs.subattractor(u);
        out.push_back({sub.map(ifs.barycentre()), sub.rho * ifs.bounding_radius(), sub.mu});
    }
    return out;
}

}  // namespace

double excluded_diagonal_sum(const IFSAttractor& ifs, const VectorIndex& m, const VectorIndex& mp, double t,
                             double h) {
    const auto a = cells(ifs, m, h);
    const bool same = m == mp;
    const auto b = same ? a : cells(ifs, mp, h);
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto& x = a[i];
        double row = 0.0;
        // the diagonal pair is always excluded; symmetric sums count i < j twice
        for (std::size_t j = same ? i + 1 : 0; j < b.size(); ++j) {
            const auto& y = b[j];
            const double r = (x.centre - y.centre).norm();
            if (r <= x.radius + y.radius) continue;
            row += y.mu * (t == 0.0 ? std::log(r) : std::pow(r, -t));
        }
        sum += x.mu * row;
    }
    return same ? 2.0 * sum : sum;
}

Extrapolated brute_force_integral(const IFSAttractor& ifs, const VectorIndex& m, const VectorIndex& mp, double t,
                                  int first, int levels, double ratio) {
    if (levels < 1) throw std::invalid_argument("need at least one level");
    const double scale = std::max(ifs.rho_of(m), ifs.rho_of(mp)) * ifs.diameter();
    const double alpha = std::pow(ratio, ifs.hausdorff_dim() - t);

    Extrapolated out;
    for (int l = first; l < first + levels; ++l)
        out.sums.push_back(excluded_diagonal_sum(ifs, m, mp, t, scale * std::pow(ratio, l)));

    // error basis alpha^l, l alpha^l (t = 0), alpha^(2l), ...
    auto basis = [&](int j, int l) {
        if (t == 0.0) {
            const int power = j / 2 + 1;
            return std::pow(alpha, power * l) * (j % 2 ? static_cast<double>(l) : 1.0);
        }
        return std::pow(alpha, (j + 1) * l);
    };
    auto extrapolate = [&](int n) {
        // uses the last n sums and n-1 error terms
        Eigen::MatrixXd a(n, n);
        Eigen::VectorXd rhs(n);
        for (int i = 0; i < n; ++i) {
            const int l = first + levels - n + i;
            a(i, 0) = 1.0;
            for (int j = 1; j < n; ++j) a(i, j) = basis(j - 1, l);
            rhs(i) = out.sums[static_cast<std::size_t>(levels - n + i)];
        }
        return a.fullPivLu().solve(rhs)(0);
    };
    out.value = extrapolate(levels);
    out.change = levels > 1 ? std::abs(out.value - extrapolate(levels - 1)) : std::abs(out.value);
    return out;
}

}  // namespace fiem::oracles
