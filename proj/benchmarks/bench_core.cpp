#include <benchmark/benchmark.h>

#include "colstate/rng.hpp"
#include "colstate/fsm/repeat.hpp"
#include "colstate/fsm/sampling.hpp"
#include "colstate/fsm/spectral.hpp"
#include "colstate/fsm/word_matrix.hpp"
#include "colstate/models/fit.hpp"
#include "colstate/models/synth.hpp"
#include "colstate/runstats/run_histogram.hpp"

using namespace colstate;

namespace {

fsm::Machine sampled_machine(int p) {
    auto eng = make_engine(1234);
    while (true) {
        fsm::Machine m = fsm::sample_unifilar(p, eng);
        if (m.is_strongly_connected()) return m;
    }
}

void BM_SampleUnifilar(benchmark::State& state) {
    auto eng = make_engine(7);
    const int p = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(fsm::sample_unifilar(p, eng));
}
BENCHMARK(BM_SampleUnifilar)->Arg(10)->Arg(40);

void BM_SpectralRadius(benchmark::State& state) {
    const auto m = sampled_machine(static_cast<int>(state.range(0)));
    const auto wm = fsm::word_matrix(m, "C");
    for (auto _ : state) benchmark::DoNotOptimize(fsm::spectral_radius(wm));
}
BENCHMARK(BM_SpectralRadius)->Arg(10)->Arg(40);

void BM_RepeatLogProfile(benchmark::State& state) {
    const auto m = sampled_machine(10);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            fsm::repeat_log_profile(m, "C", static_cast<int>(state.range(0))));
}
BENCHMARK(BM_RepeatLogProfile)->Arg(40)->Arg(400);

void BM_CountRuns(benchmark::State& state) {
    const auto m = fsm::single_state_machine(0.9);
    runstats::SymbolSequence seq;
    seq.symbols = fsm::simulate(m, state.range(0), 3);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            runstats::count_runs(seq, runstats::DelimiterMode::r_only));
}
BENCHMARK(BM_CountRuns)->Arg(100000)->Arg(1000000);

void BM_CsLoglike(benchmark::State& state) {
    const auto hist = models::synth_cs(0.4, 0.55, 10000, 5);
    const auto data = models::CountData::from_histogram(hist);
    const std::vector<double> w{10000.0, 0.4, 0.55};
    for (auto _ : state)
        benchmark::DoNotOptimize(
            models::poisson_loglike(data, models::Family::cs, w));
}
BENCHMARK(BM_CsLoglike);

void BM_FitCs(benchmark::State& state) {
    const auto hist = models::synth_cs(0.4, 0.55, 10000, 5);
    models::FitOptions opts;
    opts.starts = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(
            models::fit_mle(hist, models::Family::cs, 1, opts));
}
BENCHMARK(BM_FitCs)->Arg(4)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
