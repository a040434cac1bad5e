#include <cmath>
#include <iomanip>
#include <ostream>

#include "fiem/app/commands.hpp"
#include "fiem/geometry.hpp"
#include "fiem/library.hpp"
#include "fiem/oracles/brute_force.hpp"
#include "fiem/quadrature.hpp"

namespace fiem::app {

namespace {

double rel(double value, double reference) { return std::abs(value - reference) / std::abs(reference); }

SelftestRow row(std::string name, double value, double reference, double tolerance) {
    const double e = rel(value, reference);
    return {std::move(name), value, reference, e, tolerance, e <= tolerance};
}

}  // namespace

double koch_decomposition_residual(const FundamentalSet& koch) {
    const auto& ifs = koch.attractor();
    const double t = koch.t();
    RuleCache cache(ifs);
    double worst = 0.0;
    for (const auto& [m, mp] : koch.pairs()) {
        const double scale = ifs.subattractor(m).map.rho();
        const double width = koch.h_q() * scale;
        double sum = 0.0;
        for (int i = 1; i <= static_cast<int>(ifs.size()); ++i) {
            for (int j = 1; j <= static_cast<int>(ifs.size()); ++j) {
                const auto a = m.child(i), b = mp.child(j);
                if (elements_touch(ifs, a, b)) {
                    sum += koch.resolve(a, b);
                } else {
                    sum += double_regular(cache.rule(a, width), cache.rule(b, width),
                                          [t](const Point& x, const Point& y) { return phi_tilde((x - y).norm(), t); });
                }
            }
        }
        worst = std::max(worst, rel(sum, koch.resolve(m, mp)));
    }
    return worst;
}

std::vector<SelftestRow> quad_selftest() {
    std::vector<SelftestRow> rows;
    const auto koch = library::koch_curve();
    const double h_q = std::pow(3.0, -6);
    const char* names[] = {"I_GG", "I_12", "I_23"};
    for (double t : {0.0, 1.0}) {
        const std::string tag = t == 0.0 ? "t=0" : "t=1";
        const auto closed = koch_fundamental(t, h_q);
        const auto engine = similarity_reduce(koch, t, h_q);
        for (std::size_t p = 0; p < closed.size(); ++p) {
            const auto& [m, mp] = closed.pairs()[p];
            rows.push_back(row("koch " + tag + " " + names[p] + " engine vs closed form", engine.resolve(m, mp),
                               closed.value(p), 1e-10));
        }
        const double residual = koch_decomposition_residual(closed);
        rows.push_back({"koch " + tag + " decomposition identity", residual, 0.0, residual, 1e-8, residual <= 1e-8});
        const auto bf = oracles::brute_force_integral(koch, {}, {}, t, 5, 3, 1.0 / 3.0);
        rows.push_back(row("koch " + tag + " I_GG vs brute force", closed.value(0), bf.value, 1e-3));
    }

    struct Disjoint {
        std::string name;
        IFSAttractor ifs;
        double t;
        int quad_level;
        int first;
        int levels;
    };
    const std::vector<Disjoint> cases{
        {"cantor_set(1/3) t=0", library::cantor_set(1.0 / 3.0), 0.0, 6, 8, 4},
        {"cantor_dust(1/3,2) t=0", library::cantor_dust(1.0 / 3.0, 2), 0.0, 4, 3, 3},
        {"cantor_dust(1/3,2) t=1", library::cantor_dust(1.0 / 3.0, 2), 1.0, 5, 4, 4},
        {"cantor_dust(1/3,3) t=1", library::cantor_dust(1.0 / 3.0, 3), 1.0, 3, 2, 3},
    };
    for (const auto& c : cases) {
        const double value = energy_disjoint(c.ifs, c.t, std::pow(3.0, -c.quad_level));
        const auto bf = oracles::brute_force_integral(c.ifs, {}, {}, c.t, c.first, c.levels, 1.0 / 3.0);
        rows.push_back(row(c.name + " energy vs brute force", value, bf.value, 1e-3));
    }
    return rows;
}

int cmd_quad_selftest(std::ostream& log) {
    const auto rows = quad_selftest();
    bool ok = true;
    log << std::left << std::setw(48) << "check" << std::right << std::setw(22) << "value" << std::setw(22) << "reference"
        << std::setw(12) << "rel.err" << std::setw(10) << "tol" << "  result\n";
    for (const auto& r : rows) {
        log << std::left << std::setw(48) << r.name << std::right << std::setprecision(14) << std::setw(22) << r.value
            << std::setw(22) << r.reference << std::setprecision(3) << std::setw(12) << r.error << std::setw(10)
            << r.tolerance << "  " << (r.pass ? "PASS" : "FAIL") << '\n';
        ok &= r.pass;
    }
    return ok ? exit_ok : exit_numerical;
}

}  // namespace fiem::app
