#include <benchmark/benchmark.h>

#include "vb/cocycle.hpp"
#include "vb/families.hpp"

namespace {

vb::CocycleConfig config(vb::Exec exec) {
    vb::CocycleConfig cfg;
    cfg.exec = exec;
    cfg.use_cache = false;
    return cfg;
}

void gamma_pair(benchmark::State& state, vb::Exec exec) {
    vb::families::Rng rng(7);
    const vb::DiscDiffeo g = vb::families::random_disc_diffeo(rng);
    const vb::DiscDiffeo h = vb::families::random_disc_diffeo(rng);
    const vb::CocycleConfig cfg = config(exec);
    for (auto _ : state) benchmark::DoNotOptimize(vb::gamma(g, h, cfg));
}

void wz_twist(benchmark::State& state, vb::Exec exec) {
    const vb::BallDiffeo B =
        vb::ball_extend(vb::SphereIsotopy::canonical(vb::families::conjugated_twist(0.3, 1.0)), vb::CutoffFn{0.05, 0.05});
    const vb::CocycleConfig cfg = config(exec);
    for (auto _ : state) benchmark::DoNotOptimize(vb::wz_term(B, cfg));
}

void beta_pair(benchmark::State& state, vb::Exec exec) {
    vb::families::Rng rng(7);
    const vb::DiscVectorField V = vb::families::random_ar_field(rng, 5, 0.5, false);
    const vb::DiscVectorField W = vb::families::random_ar_field(rng, 5, 0.5, false);
    const vb::CocycleConfig cfg = config(exec);
    for (auto _ : state) benchmark::DoNotOptimize(vb::beta_integral(V, W, cfg));
}

}  // namespace

BENCHMARK_CAPTURE(gamma_pair, serial, vb::Exec::Serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(gamma_pair, parallel, vb::Exec::Parallel)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(wz_twist, serial, vb::Exec::Serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(wz_twist, parallel, vb::Exec::Parallel)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(beta_pair, serial, vb::Exec::Serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(beta_pair, parallel, vb::Exec::Parallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
