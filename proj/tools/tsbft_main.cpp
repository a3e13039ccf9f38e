// Copyright 2026 the tsbft authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file or http://www.apache.org/licenses/LICENSE-2.0

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "tsbft/explore.hpp"
#include "tsbft/harness.hpp"
#include "tsbft/replay.hpp"
#include "tsbft/sim.hpp"

namespace {

using namespace tsbft;

std::string resolve_out_dir(const std::string& flag) {
    if (!flag.empty()) {
        return flag;
    }
    if (const char* env = std::getenv("TSBFT_OUT_DIR")) {
        if (*env != '\0') {
            return env;
        }
    }
    return ".";
}

Scenario load_scenario(const std::string& path) {
    return parse_scenario(read_text_file(path));
}

std::pair<uint64_t, uint64_t> parse_seed_range(const std::string& text) {
    auto dots = text.find("..");
    if (dots == std::string::npos) {
        throw std::invalid_argument("--seeds expects the form A..B");
    }
    size_t used = 0;
    uint64_t lo = std::stoull(text.substr(0, dots), &used);
    if (used != dots) {
        throw std::invalid_argument("--seeds: bad lower bound");
    }
    std::string hi_text = text.substr(dots + 2);
    uint64_t hi = std::stoull(hi_text, &used);
    if (used != hi_text.size()) {
        throw std::invalid_argument("--seeds: bad upper bound");
    }
    if (hi < lo) {
        throw std::invalid_argument("--seeds: empty range");
    }
    return {lo, hi};
}

int cmd_run(const std::string& path, std::optional<uint64_t> seed,
            const std::string& out_flag, bool verbose) {
    Scenario sc = load_scenario(path);
    if (seed) {
        sc = sc.with_seed(*seed);
    }
    RunOutcome out = run_scenario(sc);
    if (verbose) {
        std::cout << serialize_trace(out.trace);
    }
    std::string dir = resolve_out_dir(out_flag);
    std::string stem =
        dir + "/" + sc.name + "-seed" + std::to_string(sc.seed);
    write_text_file(stem + ".trace", serialize_trace(out.trace));
    write_text_file(stem + ".verdict", render_verdict(out.verdict));
    std::cout << render_verdict(out.verdict);
    std::cout << "trace=" << stem << ".trace\n";
    return out.exit_code;
}

int cmd_batch(const std::string& path, const std::string& seeds,
              const std::string& out_flag) {
    Scenario sc = load_scenario(path);
    auto [lo, hi] = parse_seed_range(seeds);
    BatchOutcome b = run_batch(sc, lo, hi);
    std::cout << render_batch(b);
    if (b.first_failure_trace) {
        std::string dir = resolve_out_dir(out_flag);
        std::string file = dir + "/" + sc.name + "-seed" +
                           std::to_string(*b.first_failure_seed) +
                           "-failure.trace";
        write_text_file(file, serialize_trace(*b.first_failure_trace));
        std::cout << "failure_trace=" << file << "\n";
    }
    return b.exit_code;
}

int cmd_check(const std::string& path) {
    Trace tr = parse_trace(read_text_file(path));
    Verdict v = verify(tr);
    std::cout << render_verdict(v);
    return exit_code_for(v);
}

int cmd_replay(const std::string& path) {
    Trace tr = parse_trace(read_text_file(path));
    ReplayResult r = replay(tr);
    if (r.ok) {
        std::cout << "replay ok events=" << r.events_replayed << "\n";
        return kExitPass;
    }
    for (const auto& m : r.mismatches) {
        std::cout << "replay mismatch node=" << m.node << "\n";
        std::cout << "  recorded: " << m.expected << "\n";
        std::cout << "  replayed: " << m.actual << "\n";
    }
    return kExitSafetyFail;
}

int cmd_explore(int f, int rounds, const std::string& mutation,
                int64_t budget, bool crash_only) {
    ExploreOptions opt;
    opt.f = f;
    opt.rounds = rounds;
    opt.budget = budget;
    auto mut = mutation_from_name(mutation);
    if (!mut) {
        throw std::invalid_argument("unknown mutation: " + mutation);
    }
    opt.mutation = *mut;
    if (crash_only) {
        opt.behaviors = crash_only_behaviors(f);
    }
    ExploreResult res = explore(opt);
    std::cout << "explored=" << res.explored
              << " failures=" << res.failures << "\n";
    if (res.failures > 0) {
        std::cout << "first_failure=" << res.first_failure << "\n";
        std::cout << "counterexample:\n"
                  << render_scenario(*res.counterexample);
        return kExitSafetyFail;
    }
    std::cout << "overall=pass\n";
    return kExitPass;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Deterministic simulator and trace checker for a two-step"
                 " quorum consensus protocol"};
    app.require_subcommand(1);
    bool verbose = false;
    app.add_flag("--verbose", verbose, "Print every trace record");

    std::string scenario_path;
    std::string trace_path;
    std::string out_dir;
    std::string seeds;
    std::optional<uint64_t> seed;

    auto* run_cmd = app.add_subcommand("run", "Run one scenario");
    run_cmd->add_option("scenario", scenario_path, "Scenario file")
        ->required();
    run_cmd->add_option("--seed", seed, "Override the scenario seed");
    run_cmd->add_option("--out", out_dir, "Output directory for artifacts");

    auto* batch_cmd =
        app.add_subcommand("batch", "Run one scenario across a seed range");
    batch_cmd->add_option("scenario", scenario_path, "Scenario file")
        ->required();
    batch_cmd->add_option("--seeds", seeds, "Seed range A..B")->required();
    batch_cmd->add_option("--out", out_dir, "Output directory for artifacts");

    auto* check_cmd =
        app.add_subcommand("check", "Apply the trace oracles to a trace file");
    check_cmd->add_option("trace", trace_path, "Trace file")->required();

    auto* replay_cmd = app.add_subcommand(
        "replay", "Re-drive non-faulty nodes and confirm recorded effects");
    replay_cmd->add_option("trace", trace_path, "Trace file")->required();

    int f = 1;
    int rounds = 1;
    std::string mutation = "none";
    int64_t budget = 5'000'000;
    bool crash_only = false;
    auto* explore_cmd = app.add_subcommand(
        "explore", "Exhaustively run every schedule in a bounded space");
    explore_cmd->add_option("--f", f, "Fault bound (n = 5f+1)");
    explore_cmd->add_option("--rounds", rounds, "Perturbed rounds");
    explore_cmd->add_option("--mutation", mutation,
                            "Protocol mutation to inject");
    explore_cmd->add_option("--budget", budget, "Largest allowed space");
    explore_cmd->add_flag("--crash-only", crash_only,
                          "Restrict behaviors to crash faults");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) {
            return cmd_run(scenario_path, seed, out_dir, verbose);
        }
        if (batch_cmd->parsed()) {
            return cmd_batch(scenario_path, seeds, out_dir);
        }
        if (check_cmd->parsed()) {
            return cmd_check(trace_path);
        }
        if (replay_cmd->parsed()) {
            return cmd_replay(trace_path);
        }
        if (explore_cmd->parsed()) {
            return cmd_explore(f, rounds, mutation, budget, crash_only);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return tsbft::kExitError;
    }
    return tsbft::kExitError;
}
