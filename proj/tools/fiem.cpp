// fiem: solve, field, converge and quad-selftest subcommands.

#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "fiem/app/commands.hpp"
#include "fiem/errors.hpp"
#include "fiem/io.hpp"

namespace {

struct Overrides {
    std::string config;
    std::string scatterer;
    std::optional<double> k;
    std::vector<double> theta;
    std::optional<int> level;
    std::optional<int> level_max;
    std::optional<int> level_ref;
    std::optional<double> h;
    std::optional<double> cq;
    bool high_k = false;
    std::string out;
    std::string cache;
};

fiem::app::RunConfig build_config(const Overrides& o) {
    using namespace fiem::app;
    RunConfig c = o.config.empty() ? RunConfig{} : load_config(o.config);
    if (!o.scatterer.empty()) {
        try {
            c.scatterer = fiem::scatterer_spec_to_json(o.scatterer);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    }
    if (o.k) c.k = *o.k;
    if (!o.theta.empty()) c.theta = o.theta;
    if (o.level) c.level = *o.level;
    if (o.level_max) c.level_max = *o.level_max;
    if (o.level_ref) c.level_ref = *o.level_ref;
    if (o.h) c.h = *o.h;
    if (o.cq) c.c_q = *o.cq;
    if (o.high_k) c.high_k = true;
    if (!o.out.empty()) c.out = o.out;
    if (!o.cache.empty()) c.fundamental_cache = o.cache;
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hausdorff-measure Galerkin solver for sound-soft scattering by fractals"};
    app.require_subcommand(1);
    Overrides o;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", o.config, "JSON run configuration")->check(CLI::ExistingFile);
        sub->add_option("--scatterer", o.scatterer, "library scatterer, e.g. cantor_dust:rho=0.3333333333333333,n=3");
        sub->add_option("--k", o.k, "wavenumber");
        sub->add_option("--theta", o.theta, "incidence direction (normalised)")->expected(2, 3);
        sub->add_option("--level", o.level, "mesh level");
        sub->add_option("--mesh-width", o.h, "mesh width h (overrides --level)");
        sub->add_option("--cq", o.cq, "quadrature constant C_Q, h_Q = C_Q h");
        sub->add_flag("--high-k", o.high_k, "default C_Q = max rho^4");
        sub->add_option("--out", o.out, "output directory");
        sub->add_option("--fundamental-cache", o.cache, "directory caching fundamental integrals");
    };
    auto* solve = app.add_subcommand("solve", "single solve: mesh, coefficients, field grid, far field, metadata");
    add_common(solve);
    auto* field = app.add_subcommand("field", "scattered and total field grids plus far field");
    add_common(field);
    auto* converge = app.add_subcommand("converge", "convergence study over levels 0..level_max and level_ref");
    add_common(converge);
    converge->add_option("--level-max", o.level_max, "largest studied level");
    converge->add_option("--level-ref", o.level_ref, "reference level");
    auto* selftest = app.add_subcommand("quad-selftest", "singular quadrature checks against closed forms and oracles");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : fiem::app::exit_config;
    }

    try {
        if (selftest->parsed()) return fiem::app::cmd_quad_selftest(std::cout);
        const auto config = build_config(o);
        if (solve->parsed()) return fiem::app::cmd_solve(config, std::cout);
        if (field->parsed()) return fiem::app::cmd_field(config, std::cout);
        if (converge->parsed()) return fiem::app::cmd_converge(config, std::cout);
    } catch (const fiem::app::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return fiem::app::exit_config;
    } catch (const fiem::NumericalFailure& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return fiem::app::exit_numerical;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return fiem::app::exit_config;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
