#include <benchmark/benchmark.h>

#include "rieszlab/rieszlab.hpp"

using namespace rieszlab;

namespace {

void BM_ContinuousFT(benchmark::State& state) {
    const Grid g(1, 20.0, static_cast<int>(state.range(0)));
    const auto f = TestFunction::gaussian().sample(g);
    for (auto _ : state) benchmark::DoNotOptimize(continuous_ft(f));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ContinuousFT)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->Complexity();

void BM_FractionalLaplacian(benchmark::State& state) {
    const Grid g(1, 20.0, static_cast<int>(state.range(0)));
    const auto f = TestFunction::gaussian().sample(g);
    for (auto _ : state) benchmark::DoNotOptimize(fractional_laplacian(f, 0.5));
}
BENCHMARK(BM_FractionalLaplacian)->Arg(4096)->Arg(1 << 15);

void BM_RieszConvolution(benchmark::State& state) {
    const Grid g(1, 20.0, static_cast<int>(state.range(0)));
    const auto f = TestFunction::gaussian().sample(g);
    for (auto _ : state) benchmark::DoNotOptimize(riesz_potential_convolution(f, 0.5));
}
BENCHMARK(BM_RieszConvolution)->Arg(2048)->Arg(8192)->Unit(benchmark::kMillisecond);

void BM_IntegrableSpatial(benchmark::State& state) {
    const Grid g(1, 20.0, 4096);
    const auto f = TestFunction::gaussian().sample(g);
    const PotentialSpec spec(static_cast<double>(state.range(0)) / 10.0, 1.0, 1);
    for (auto _ : state) benchmark::DoNotOptimize(integrable_potential_spatial(f, spec));
}
BENCHMARK(BM_IntegrableSpatial)->Arg(5)->Arg(15)->Arg(25)->Unit(benchmark::kMillisecond);

void BM_IntegrableSpatial2D(benchmark::State& state) {
    const Grid g(2, 12.0, static_cast<int>(state.range(0)));
    const auto f = TestFunction::gaussian().sample(g);
    const PotentialSpec spec(0.5, 1.0, 2);
    for (auto _ : state) benchmark::DoNotOptimize(integrable_potential_spatial(f, spec));
}
BENCHMARK(BM_IntegrableSpatial2D)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_HKernelEval(benchmark::State& state) {
    const HKernel H({1.0}, static_cast<double>(state.range(0)) / 10.0, 1);
    double x = 2.0;
    for (auto _ : state) {
        const double p[] = {x};
        benchmark::DoNotOptimize(H(p));
        x += 1e-9;
    }
}
BENCHMARK(BM_HKernelEval)->Arg(5)->Arg(15);

void BM_PhiloxUniform(benchmark::State& state) {
    Rng rng(1);
    for (auto _ : state) benchmark::DoNotOptimize(rng.uniform());
}
BENCHMARK(BM_PhiloxUniform);

void BM_CharfunClosedForm(benchmark::State& state) {
    const PotentialSpec spec(0.5, 1.0, 1);
    const PotentialFunctional G(TestFunction::cutoff_bump().sample(Grid(1, 32.0, 4096)), spec);
    PoissonConfig cfg;
    cfg.B = 20.0;
    for (auto _ : state) benchmark::DoNotOptimize(charfun_closed_form(G, 1.0, cfg));
}
BENCHMARK(BM_CharfunClosedForm)->Unit(benchmark::kMillisecond);

void BM_CharfunMonteCarlo(benchmark::State& state) {
    const PotentialSpec spec(0.5, 1.0, 1);
    const PotentialFunctional G(TestFunction::cutoff_bump().sample(Grid(1, 32.0, 4096)), spec);
    PoissonConfig cfg;
    cfg.B = 20.0;
    for (auto _ : state) benchmark::DoNotOptimize(charfun_monte_carlo(G, {0.5, 1.0, 2.0}, cfg, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_CharfunMonteCarlo)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
