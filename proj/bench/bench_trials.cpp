#include <benchmark/benchmark.h>

#include <string>

#include "ia/sim.hpp"

namespace {

ia::Scenario scenario(ia::Regime r, const std::string& name, int threads) {
    ia::Scenario sc;
    sc.regime = r;
    sc.cfg = ia::load_config(std::string(IA_CONFIG_DIR) + "/" + name);
    sc.trials = 64;
    sc.base_seed = 1;
    sc.threads = threads;
    return sc;
}

void BM_Serial(benchmark::State& st, ia::Regime r, const char* cfg) {
    const ia::Scenario sc = scenario(r, cfg, 1);
    for (auto _ : st) benchmark::DoNotOptimize(ia::run_trials_serial(sc));
    st.SetItemsProcessed(st.iterations() * sc.trials);
}

void BM_Parallel(benchmark::State& st, ia::Regime r, const char* cfg) {
    const ia::Scenario sc = scenario(r, cfg, static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(ia::run_trials(sc));
    st.SetItemsProcessed(st.iterations() * sc.trials);
}

}  // namespace

BENCHMARK_CAPTURE(BM_Serial, blind, ia::Regime::blind, "blind_mixed.json")->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Parallel, blind, ia::Regime::blind, "blind_mixed.json")
    ->Arg(1)->Arg(2)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Serial, ff3, ia::Regime::ff3, "ff3_L1_e2.json")->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Parallel, ff3, ia::Regime::ff3, "ff3_L1_e2.json")
    ->Arg(1)->Arg(2)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Serial, ffk, ia::Regime::ffk, "ffk_k4.json")->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Parallel, ffk, ia::Regime::ffk, "ffk_k4.json")
    ->Arg(1)->Arg(2)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
