// Copyright 2026 the tsbft authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file or http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tsbft/adversary.hpp"
#include "tsbft/delay.hpp"

namespace tsbft {

class ScenarioError : public std::runtime_error {
public:
    ScenarioError(int line, const std::string& msg)
        : std::runtime_error(line > 0 ? "scenario line " +
                                            std::to_string(line) + ": " + msg
                                      : "scenario: " + msg),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

// Names of the trace checks a scenario can request.
const std::vector<std::string>& all_check_names();

// A full run description: protocol parameters, network model, adversary,
// horizon, and which checks to apply. Everything needed to reproduce a run
// byte for byte.
struct Scenario {
    std::string name = "scenario";
    int f = 1;
    Tick to_vote_base = 10;
    Tick to_commit_base = 30;
    Tick gst = 0;
    Tick delta = 1;
    std::optional<Tick> post_gst_delay;                 // default: delta
    uint64_t seed = 0;
    std::optional<std::pair<Tick, Tick>> pre_gst_random;
    std::vector<DelayRule> delay_rules;
    std::optional<Tick> horizon_ticks;                  // default: auto
    int64_t horizon_events = 1'000'000;
    AdversarySpec adversary;
    bool faulty_rotate = false;
    Mutation mutation = Mutation::None;
    std::vector<std::string> checks = all_check_names();
    std::vector<Value> initials;                        // resized to n

    friend bool operator==(const Scenario&, const Scenario&) = default;

    int n() const { return 5 * f + 1; }
    Config config() const {
        return Config{f, to_vote_base, to_commit_base, mutation};
    }
    bool fault_free() const { return adversary.empty(); }
    Tick effective_post_gst_delay() const {
        return post_gst_delay.value_or(delta);
    }

    // Initial value of each node: configured, or "v<i>".
    std::vector<Value> resolved_initials() const;

    // Explicit horizon, or entry time of round r_ok + f + 4, which covers
    // the liveness deadline round with margin.
    Tick resolved_horizon() const;

    DelayModel make_delay_model() const;

    // Copy with this seed; with faulty_rotate, faulty ids shift by the
    // seed so batches spread faults over all positions.
    Scenario with_seed(uint64_t seed) const;

    // Throws ScenarioError on any inconsistency.
    void validate() const;
};

Scenario parse_scenario(const std::string& text);
std::string render_scenario(const Scenario& sc);

} // namespace tsbft
