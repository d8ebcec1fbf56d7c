#include <benchmark/benchmark.h>

#include "couette/flows.hpp"
#include "couette/functional_bounds.hpp"
#include "couette/spectral.hpp"
#include "couette/stability.hpp"
#include "couette/verify.hpp"

using namespace couette;

namespace {

const Annulus ref(1.0, 2.0);

void BM_VelocityEval(benchmark::State& state) {
    const FlowSpec spec(FlowFamily::spiral_pc_vorticity_on_inner, 1.0, 0.5, -2.0);
    const CylPoint p(1.37, 0.9, 0.3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(velocity(spec, ref, p));
    }
}
BENCHMARK(BM_VelocityEval);

void BM_ClosedResidual(benchmark::State& state) {
    const FlowSpec spec(FlowFamily::spiral_poiseuille_inner_rotating, 3.0, -2.0);
    const auto points = sample_interior(ref, static_cast<int>(state.range(0)), 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ns_residual_closed(spec, ref, points));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ClosedResidual)->Arg(1000)->Arg(10000);

void BM_FdResidual(benchmark::State& state) {
    const FlowSpec spec(FlowFamily::spiral_poiseuille_inner_rotating, 3.0, -2.0);
    const FlowField field = make_flow_field(spec, ref);
    const CylPoint p(1.37, 0.9, 0.3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ns_residual_fd(field, ref, p, 1e-4));
    }
}
BENCHMARK(BM_FdResidual);

void BM_MConstantVorticity(benchmark::State& state) {
    const FlowSpec spec(FlowFamily::spiral_pc_vorticity_on_outer, 1.0, 1.0, -1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(m_constant(spec, ref));
    }
}
BENCHMARK(BM_MConstantVorticity);

void BM_SlScanCell(benchmark::State& state) {
    const Grid1D grid(ref, static_cast<int>(state.range(0)));
    const double alphas[] = {3.7};
    for (auto _ : state) {
        benchmark::DoNotOptimize(sl_scan(ref, 1, alphas, grid));
    }
}
BENCHMARK(BM_SlScanCell)->Arg(100)->Arg(400);

void BM_VEpsilonQuadrature(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(v_epsilon_rayleigh(ref, 0.5, n, n));
    }
}
BENCHMARK(BM_VEpsilonQuadrature)->Arg(512)->Arg(2048);

void BM_DiscreteRayleigh(benchmark::State& state) {
    const double eps = 1.0;
    const VectorField field = [&](const CylPoint& p) -> CylVector {
        const double axial = std::max(0.0, 1.0 - eps * std::abs(p.z));
        const double radial = (ref.r_outer() - p.rho) * (p.rho - ref.r_inner());
        const double v = axial * radial;
        return {v * std::cos(p.theta), -v * std::sin(p.theta), 0.0};
    };
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(discrete_rayleigh(field, ref, 1.0,
                                                   RayleighGrid{n, n, n},
                                                   QuotientForm::gradient));
    }
}
BENCHMARK(BM_DiscreteRayleigh)->Arg(32)->Arg(64);

} // namespace

BENCHMARK_MAIN();
