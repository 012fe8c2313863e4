#include <benchmark/benchmark.h>

#include "fockint/bell.hpp"
#include "fockint/fock.hpp"
#include "fockint/ghom.hpp"
#include "fockint/oracle.hpp"

using namespace fockint;

static void ParityCorrelator(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Splitter t1(0.486), t2(0.514);
    for (auto _ : state) {
        benchmark::DoNotOptimize(bell::parity_correlator(n, t1, t2));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(ParityCorrelator)->RangeMultiplier(4)->Range(2, 512)->Complexity();

static void AmplitudePhaseIntegral(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const FockPair src(n / 2, n - n / 2);
    const Splitter s(0.37);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ghom::amplitude(src, s, n / 2, n - n / 2));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(AmplitudePhaseIntegral)->RangeMultiplier(2)->Range(4, 64)->Complexity();

static void AmplitudeCombinatorial(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const FockPair src(n / 2, n - n / 2);
    const Splitter s(0.37);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ghom::amplitude(src, s, n / 2, n - n / 2,
                                                 ghom::AmplitudeForm::kCombinatorialSum));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(AmplitudeCombinatorial)->RangeMultiplier(2)->Range(4, 64)->Complexity();

static void OutcomeDistributionFull(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const FockPair src(n / 2, n - n / 2);
    const Splitter s(0.5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ghom::outcome_distribution(src, s));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(OutcomeDistributionFull)->RangeMultiplier(2)->Range(4, 64)->Complexity();

static void ChshEvaluation(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const bell::BellSettings settings(0.49, 0.51, 0.54, 0.46);
    for (auto _ : state) {
        benchmark::DoNotOptimize(bell::chsh_q(n, settings));
    }
}
BENCHMARK(ChshEvaluation)->Arg(2)->Arg(20)->Arg(100);

static void OracleExpansion(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const FockPair src(n / 2, n / 2);
    const auto map = bell_mode_map(Splitter(0.57), Splitter(0.43));
    for (auto _ : state) {
        benchmark::DoNotOptimize(oracle::expand_state(src, map));
    }
}
BENCHMARK(OracleExpansion)->Arg(4)->Arg(8)->Arg(12);

BENCHMARK_MAIN();
