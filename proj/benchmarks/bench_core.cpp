#include <benchmark/benchmark.h>

#include <deque>

#include "zxi/zxi.hpp"

namespace {

const zxi::Waveform& noise(std::size_t n) {
    static const zxi::Waveform w = zxi::synth_gaussian(zxi::GaussianShape{0.2, 1.0}, 1 << 20, 1.0, 1);
    static std::deque<zxi::Waveform> cut;  // stable references across growth
    for (const auto& c : cut)
        if (c.size() == n) return c;
    cut.emplace_back(std::vector<double>(w.samples.begin(), w.samples.begin() + static_cast<long>(n)), 1.0);
    return cut.back();
}

void BM_Detect(benchmark::State& state) {
    const auto& w = noise(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(zxi::detect_crossings(w));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Detect)->Range(1 << 12, 1 << 20);

void BM_Crosslation(benchmark::State& state) {
    const auto& w = noise(1 << 18);
    const zxi::CrossingSet cs = zxi::detect_crossings(w);
    const auto win = zxi::LagWindow::symmetric(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(zxi::empirical_crosslation(w, cs, win));
}
BENCHMARK(BM_Crosslation)->Arg(16)->Arg(64)->Arg(256);

void BM_AnalyticSignal(benchmark::State& state) {
    const auto& w = noise(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(zxi::analytic_signal(w));
}
BENCHMARK(BM_AnalyticSignal)->Range(1 << 12, 1 << 20);

void BM_StreamPush(benchmark::State& state) {
    const auto& w = noise(1 << 16);
    zxi::StreamingCrosslator sc({static_cast<std::size_t>(state.range(0)), 0, zxi::StreamMode::future_in_the_past,
                                 zxi::Averaging::fixed, 1.0, 1.0});
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sc.push_sample(w.samples[i]));
        i = (i + 1) % w.size();
    }
}
BENCHMARK(BM_StreamPush)->Arg(64)->Arg(256)->Arg(1024);

void BM_ButterworthQuadrature(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(zxi::woodward_constants_quadrature(zxi::Butterworth{1.5, 1.0, 1.0}));
}
BENCHMARK(BM_ButterworthQuadrature);

}  // namespace

BENCHMARK_MAIN();
