#include <benchmark/benchmark.h>

#include "shocklab/euler.hpp"
#include "shocklab/flux.hpp"

namespace {

using namespace shocklab;

void bm_roe_flux(benchmark::State& state) {
    GasModel gas;
    const Vec ql = conserved({1.4, 2.0, 0.0, 1.0}, gas);
    const Vec qr = conserved({3.7, 0.8, 0.0, 4.5}, gas);
    FluxSpec spec;
    spec.kind = FluxKind::Roe;
    for (auto _ : state) {
        Vec f = numerical_flux(spec, ql, qr, gas, axis_x());
        benchmark::DoNotOptimize(f);
    }
}
BENCHMARK(bm_roe_flux);

} // namespace

BENCHMARK_MAIN();
