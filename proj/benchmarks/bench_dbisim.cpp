#include <benchmark/benchmark.h>

#include "dlts/bisim.hpp"
#include "dlts/oracle.hpp"

namespace {

using namespace dlts;

struct Fixture {
    NormalizedDlts dlts;
    BlockList init;
};

Fixture make_fixture(std::size_t n, std::size_t k) {
    const auto dfa = oracle::gen_random_dfa({.n = n, .k = k, .density = 1.0, .seed = n * 31 + k});
    Fixture f{normalize(dfa.lts), BlockList(2)};
    std::vector<char> fin(n, 0);
    for (auto q : dfa.finals) fin[q] = 1;
    for (StateIndex q = 0; q < n; ++q) f.init[fin[q] ? 0 : 1].push_back(q);
    std::erase_if(f.init, [](const auto& b) { return b.empty(); });
    return f;
}

void BM_Dbisim(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto k = static_cast<std::size_t>(state.range(1));
    const auto f = make_fixture(n, k);
    ScanStats stats;
    for (auto _ : state) {
        stats = ScanStats{};
        auto result = dbisim(f.dlts, RefinablePartition::from_initial(n, f.init), &stats);
        benchmark::DoNotOptimize(result);
    }
    state.counters["m"] = static_cast<double>(f.dlts.transition_count());
    state.counters["scanned"] = static_cast<double>(stats.transitions_scanned);
    state.counters["blocks"] = static_cast<double>(stats.blocks_final);
}
BENCHMARK(BM_Dbisim)->ArgsProduct({{1 << 10, 1 << 12, 1 << 14, 1 << 16}, {2, 4}})->Unit(benchmark::kMicrosecond);

void BM_Normalize(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto raw = oracle::gen_random_dlts({.n = n, .k = 4, .density = 0.7, .seed = 3}).raw;
    for (auto _ : state) {
        auto t = normalize(raw);
        benchmark::DoNotOptimize(t);
    }
    state.SetComplexityN(static_cast<std::int64_t>(n));
}
BENCHMARK(BM_Normalize)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->Complexity()->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
