// Copyright 2026 the tsbft authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file or http://www.apache.org/licenses/LICENSE-2.0

#include <benchmark/benchmark.h>

#include <string>

#include "tsbft/explore.hpp"
#include "tsbft/harness.hpp"
#include "tsbft/replay.hpp"
#include "tsbft/sim.hpp"
#include "tsbft/verifier.hpp"

namespace {

using namespace tsbft;

Scenario load(const std::string& stem) {
    return parse_scenario(read_text_file(std::string(TSBFT_SCENARIO_DIR) +
                                         "/" + stem + ".scn"));
}

Scenario hostile_campaign() {
    Scenario sc;
    sc.name = "bench-campaign";
    sc.gst = 40;
    sc.delta = 2;
    sc.pre_gst_random = std::pair<Tick, Tick>{1, 40};
    sc.horizon_ticks = 2000;
    sc.adversary.faulty[0] =
        StrategySpec{StrategyKind::EquivocateVotes, 0, {}, false};
    return sc;
}

void BM_SimFastPath(benchmark::State& state) {
    Scenario sc = load("fastpath");
    for (auto _ : state) {
        benchmark::DoNotOptimize(run(sc));
    }
}
BENCHMARK(BM_SimFastPath);

void BM_SimCrashedLeader(benchmark::State& state) {
    Scenario sc = load("crashed_leader");
    for (auto _ : state) {
        benchmark::DoNotOptimize(run(sc));
    }
}
BENCHMARK(BM_SimCrashedLeader);

void BM_SimHostileSeed(benchmark::State& state) {
    Scenario sc = hostile_campaign();
    uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(run(sc.with_seed(++seed)));
    }
}
BENCHMARK(BM_SimHostileSeed);

void BM_VerifyTrace(benchmark::State& state) {
    Trace tr = run(load("faulty_leader_commit"));
    for (auto _ : state) {
        benchmark::DoNotOptimize(verify(tr));
    }
}
BENCHMARK(BM_VerifyTrace);

void BM_ReplayTrace(benchmark::State& state) {
    Trace tr = run(load("faulty_leader_commit"));
    for (auto _ : state) {
        benchmark::DoNotOptimize(replay(tr));
    }
}
BENCHMARK(BM_ReplayTrace);

void BM_SerializeTrace(benchmark::State& state) {
    Trace tr = run(load("faulty_leader_commit"));
    for (auto _ : state) {
        benchmark::DoNotOptimize(serialize_trace(tr));
    }
}
BENCHMARK(BM_SerializeTrace);

void BM_ParseTrace(benchmark::State& state) {
    std::string text = serialize_trace(run(load("faulty_leader_commit")));
    for (auto _ : state) {
        benchmark::DoNotOptimize(parse_trace(text));
    }
    state.SetBytesProcessed(static_cast<int64_t>(state.iterations()) *
                            static_cast<int64_t>(text.size()));
}
BENCHMARK(BM_ParseTrace);

void BM_ScheduleDecode(benchmark::State& state) {
    ExploreOptions opt;
    opt.rounds = 2;
    int64_t count = schedule_count(opt);
    int64_t index = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(schedule_scenario(opt, index));
        index = (index + 1) % count;
    }
}
BENCHMARK(BM_ScheduleDecode);

void BM_ExploreOneRound(benchmark::State& state) {
    ExploreOptions opt;
    opt.rounds = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(explore(opt));
    }
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) * 931);
}
BENCHMARK(BM_ExploreOneRound);

} // namespace

BENCHMARK_MAIN();
