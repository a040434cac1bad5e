#include <cmath>

#include <benchmark/benchmark.h>

#include "fiem/galerkin.hpp"
#include "fiem/library.hpp"
#include "fiem/postfield.hpp"
#include "fiem/special_functions.hpp"

using namespace fiem;

namespace {

const WaveParams wave2(5.0, Point(1, -1, 0).normalized(), 2);
const WaveParams wave3(2.0, Point(0, 1, -1).normalized(), 3);

void BM_Hankel0(benchmark::State& state) {
    // spans the three evaluation branches
    const double z = static_cast<double>(state.range(0)) / 10.0;
    for (auto _ : state) benchmark::DoNotOptimize(hankel0_h1(z));
}
BENCHMARK(BM_Hankel0)->Arg(5)->Arg(150)->Arg(1000);

void BM_Kernel(benchmark::State& state) {
    const int dim = static_cast<int>(state.range(0));
    const Point x(0.1, 0.2, dim == 3 ? 0.3 : 0.0), y(0.7, -0.4, dim == 3 ? 0.1 : 0.0);
    for (auto _ : state) benchmark::DoNotOptimize(phi(x, y, 5.0, dim));
}
BENCHMARK(BM_Kernel)->Arg(2)->Arg(3);

void BM_BarycentreRule(benchmark::State& state) {
    const auto koch = library::koch_curve();
    const double h_q = std::pow(3.0, -static_cast<double>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(barycentre_rule(koch, {}, h_q));
}
BENCHMARK(BM_BarycentreRule)->DenseRange(4, 8, 2);

void BM_KochFundamental(benchmark::State& state) {
    const double h_q = std::pow(3.0, -static_cast<double>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(koch_fundamental(0.0, h_q));
}
BENCHMARK(BM_KochFundamental)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_SimilarityReduceSnowflake(benchmark::State& state) {
    const auto snow = library::koch_snowflake();
    for (auto _ : state) benchmark::DoNotOptimize(similarity_reduce(snow, 0.0, 0.05));
}
BENCHMARK(BM_SimilarityReduceSnowflake)->Unit(benchmark::kMillisecond);

void BM_AssembleKoch(benchmark::State& state) {
    const auto mesh = uniform_mesh(library::koch_curve(), static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(assemble(mesh, wave2, 1.0 / 9.0));
    state.counters["N"] = static_cast<double>(mesh.size());
}
BENCHMARK(BM_AssembleKoch)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_AssembleDust(benchmark::State& state) {
    const auto mesh = uniform_mesh(library::cantor_dust(1.0 / 3.0, 3), static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(assemble(mesh, wave3, 1.0 / 9.0));
    state.counters["N"] = static_cast<double>(mesh.size());
}
BENCHMARK(BM_AssembleDust)->DenseRange(1, 2)->Unit(benchmark::kMillisecond);

void BM_Solve(benchmark::State& state) {
    const auto sys = assemble(uniform_mesh(library::koch_curve(), static_cast<int>(state.range(0))), wave2, 1.0 / 9.0);
    for (auto _ : state) benchmark::DoNotOptimize(solve(sys));
}
BENCHMARK(BM_Solve)->DenseRange(3, 4)->Unit(benchmark::kMillisecond);

void BM_FarField(benchmark::State& state) {
    const auto sol = solve(assemble(uniform_mesh(library::koch_curve(), 3), wave2, 1.0 / 9.0));
    const auto dirs = circle_directions(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(far_field(sol, dirs));
}
BENCHMARK(BM_FarField)->Arg(50)->Arg(400)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
