// Copyright 2026 the tsbft authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file or http://www.apache.org/licenses/LICENSE-2.0

#include "tsbft/harness.hpp"

#include <fstream>
#include <sstream>

#include "tsbft/sim.hpp"

namespace tsbft {

bool is_safety_check(const std::string& name) {
    return name == "agreement" || name == "lock_in" ||
           name == "validity_strict" || name == "validity_weak" ||
           name.rfind("inv_", 0) == 0;
}

int exit_code_for(const Verdict& v) {
    bool liveness_fail = false;
    bool inconclusive = false;
    for (const auto& c : v.checks) {
        if (c.status == CheckStatus::Fail) {
            if (is_safety_check(c.name)) {
                return kExitSafetyFail;
            }
            liveness_fail = true;
        } else if (c.status == CheckStatus::Inconclusive) {
            inconclusive = true;
        }
    }
    if (liveness_fail) {
        return kExitLivenessFail;
    }
    return inconclusive ? kExitInconclusive : kExitPass;
}

RunOutcome run_scenario(const Scenario& sc) {
    RunOutcome out;
    out.trace = run(sc);
    out.verdict = verify(out.trace);
    out.exit_code = exit_code_for(out.verdict);
    return out;
}

BatchOutcome run_batch(const Scenario& base, uint64_t seed_lo,
                       uint64_t seed_hi) {
    if (seed_hi < seed_lo) {
        throw std::invalid_argument("batch: empty seed range");
    }
    BatchOutcome b;
    b.name = base.name;
    b.seed_lo = seed_lo;
    b.seed_hi = seed_hi;
    for (uint64_t s = seed_lo;; ++s) {
        RunOutcome out = run_scenario(base.with_seed(s));
        ++b.runs;

        bool failed = false;
        bool inconclusive = false;
        for (const auto& c : out.verdict.checks) {
            if (c.status == CheckStatus::Fail) {
                failed = true;
                ++b.check_failures[c.name];
            } else if (c.status == CheckStatus::Inconclusive) {
                inconclusive = true;
            }
        }
        if (failed) {
            ++b.failed_runs;
            if (!b.first_failure_seed) {
                b.first_failure_seed = s;
                b.first_failure_trace = std::move(out.trace);
            }
        } else if (inconclusive) {
            ++b.inconclusive_runs;
            if (!b.first_inconclusive_seed) {
                b.first_inconclusive_seed = s;
            }
        }
        // Worst exit wins; safety (1) over liveness (2) over inconclusive.
        auto rank = [](int code) {
            switch (code) {
            case kExitSafetyFail:
                return 3;
            case kExitLivenessFail:
                return 2;
            case kExitInconclusive:
                return 1;
            default:
                return 0;
            }
        };
        if (rank(out.exit_code) > rank(b.exit_code)) {
            b.exit_code = out.exit_code;
        }
        if (s == seed_hi) {
            break;
        }
    }
    return b;
}

std::string render_batch(const BatchOutcome& b) {
    std::ostringstream out;
    out << "tsbft-batch v1\n";
    out << "name=" << b.name << " seeds=" << b.seed_lo << ".." << b.seed_hi
        << " runs=" << b.runs << "\n";
    out << "failed_runs=" << b.failed_runs
        << " inconclusive_runs=" << b.inconclusive_runs << "\n";
    for (const auto& [name, count] : b.check_failures) {
        out << "check " << name << " failures=" << count << "\n";
    }
    if (b.first_failure_seed) {
        out << "first_failure_seed=" << *b.first_failure_seed << "\n";
    }
    if (b.first_inconclusive_seed) {
        out << "first_inconclusive_seed=" << *b.first_inconclusive_seed
            << "\n";
    }
    out << "overall="
        << (b.failed_runs > 0
                ? "fail"
                : (b.inconclusive_runs > 0 ? "inconclusive" : "pass"))
        << "\n";
    return out.str();
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot write " + path);
    }
    out << text;
    if (!out) {
        throw std::runtime_error("write failed for " + path);
    }
}

} // namespace tsbft
