// Copyright 2026 the tsbft authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file or http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <map>
#include <optional>
#include <string>

#include "tsbft/scenario.hpp"
#include "tsbft/trace.hpp"
#include "tsbft/verifier.hpp"

namespace tsbft {

// Process exit codes: 0 all checks pass, 1 a safety check failed,
// 2 a liveness-style check failed, 3 setup error (assigned by the CLI),
// 4 at least one check was inconclusive and none failed.
constexpr int kExitPass = 0;
constexpr int kExitSafetyFail = 1;
constexpr int kExitLivenessFail = 2;
constexpr int kExitError = 3;
constexpr int kExitInconclusive = 4;

bool is_safety_check(const std::string& name);
int exit_code_for(const Verdict& v);

struct RunOutcome {
    Trace trace;
    Verdict verdict;
    int exit_code = kExitPass;
};

// Runs one scenario and applies its configured checks to the trace.
RunOutcome run_scenario(const Scenario& sc);

struct BatchOutcome {
    std::string name;
    uint64_t seed_lo = 0;
    uint64_t seed_hi = 0;
    int64_t runs = 0;
    int64_t failed_runs = 0;
    int64_t inconclusive_runs = 0;
    std::map<std::string, int64_t> check_failures;
    std::optional<uint64_t> first_failure_seed;
    std::optional<uint64_t> first_inconclusive_seed;
    std::optional<Trace> first_failure_trace;
    int exit_code = kExitPass;
};

// Runs the scenario once per seed in [seed_lo, seed_hi]; each run gets
// the seed applied (which also rotates the faulty set when the scenario
// asks for that).
BatchOutcome run_batch(const Scenario& base, uint64_t seed_lo,
                       uint64_t seed_hi);

std::string render_batch(const BatchOutcome& b);

// Small file helpers shared by the CLI and tests.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

} // namespace tsbft
