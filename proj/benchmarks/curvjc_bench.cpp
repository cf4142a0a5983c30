#include "curvjc/deformed_algebra.hpp"
#include "curvjc/entanglement.hpp"
#include "curvjc/jc_dynamics.hpp"
#include "curvjc/observables.hpp"
#include "curvjc/phase_space.hpp"

#include <benchmark/benchmark.h>

using namespace curvjc;

namespace {

SystemParams params(double lambda) {
    SystemParams p;
    p.lambda = lambda;
    return p;
}

void BM_EvolveCoherent(benchmark::State& state) {
    const double alpha = static_cast<double>(state.range(0));
    double t = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(evolve_excited_coherent(alpha, t, params(0.1)));
        t += 0.01;
    }
}
BENCHMARK(BM_EvolveCoherent)->Arg(1)->Arg(3)->Arg(6);

void BM_InversionTrajectory(benchmark::State& state) {
    const auto field = coherent_amplitudes(3.0, state_truncation(3.0));
    for (auto _ : state) {
        double acc = 0.0;
        for (int i = 0; i < 1001; ++i) acc += population_inversion(evolve_excited(field, 0.025 * i, params(0.1)));
        benchmark::DoNotOptimize(acc);
    }
}
BENCHMARK(BM_InversionTrajectory)->Unit(benchmark::kMillisecond);

void BM_WignerKernel(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    double x = 0.3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(fock_wigner_kernel(n, n + 3, x, -0.7));
        x += 1e-6;
    }
}
BENCHMARK(BM_WignerKernel)->Arg(0)->Arg(10)->Arg(30);

void BM_WignerGrid(benchmark::State& state) {
    const int nodes = static_cast<int>(state.range(0));
    const auto rho = reduced_field_density(evolve_excited_coherent(1.0, 3.0, params(0.3)));
    const PhaseGrid grid{-6.0, 6.0, -6.0, 6.0, nodes, nodes};
    for (auto _ : state) benchmark::DoNotOptimize(wigner(rho, grid));
    state.SetItemsProcessed(state.iterations() * nodes * nodes);
}
BENCHMARK(BM_WignerGrid)->Arg(121)->Arg(241)->Unit(benchmark::kMillisecond);

void BM_Negativity(benchmark::State& state) {
    const auto rho = reduced_field_density(evolve_excited_coherent(0.5, 4.7, params(0.0)));
    const auto w = wigner(rho, PhaseGrid{});
    for (auto _ : state) benchmark::DoNotOptimize(negativity(w));
}
BENCHMARK(BM_Negativity)->Unit(benchmark::kMillisecond);

void BM_FieldEntropy(benchmark::State& state) {
    const auto s = evolve_excited_coherent(3.0, 12.0, params(0.1));
    for (auto _ : state) benchmark::DoNotOptimize(field_entropy(s));
}
BENCHMARK(BM_FieldEntropy);

void BM_VerifyAlgebra(benchmark::State& state) {
    const auto rep = build_ladder_rep(0.5, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(verify_algebra(rep, 0.5, 1e-12));
}
BENCHMARK(BM_VerifyAlgebra)->Arg(16)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
