// Copyright 2026 the tsbft authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file or http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tsbft/adversary.hpp"
#include "tsbft/scenario.hpp"

namespace tsbft {

// Thrown when the schedule space exceeds the configured budget.
class SpaceTooLarge : public std::runtime_error {
public:
    explicit SpaceTooLarge(const std::string& what)
        : std::runtime_error(what) {}
};

// Bounded-exhaustive exploration at small scale. Every schedule combines
// one faulty-node behavior with one network choice per perturbed round:
//   - a proposal prefix k in [0, n]: recipients with id < k get the
//     round's proposal in time, the rest only after their vote timeout;
//   - an optional straggler vote: one sender's round-r vote reaches the
//     next round's leader only after that round ends.
// Rounds past `rounds` run with uniform 1-tick delays so stragglers land
// and quorums can finally assemble.
struct ExploreOptions {
    int f = 1;
    int rounds = 0; // number of perturbed rounds
    Mutation mutation = Mutation::None;
    int64_t budget = 5'000'000;
    std::vector<AdversarySpec> behaviors; // empty = default_behaviors(f)
    Tick to_vote_base = 2;
    Tick to_commit_base = 6;
};

// none, crash(id) from t=0, equivocate(id) plain and flipped.
std::vector<AdversarySpec> default_behaviors(int f);
// crash(id) from t=0 only.
std::vector<AdversarySpec> crash_only_behaviors(int f);

// Exact size of the schedule space: 1 when rounds = 0, otherwise
// behaviors * ((n+1)^2)^rounds. Does not apply the budget.
int64_t schedule_count(const ExploreOptions& opt);

// The index-th schedule as a runnable scenario, index in [0, count).
Scenario schedule_scenario(const ExploreOptions& opt, int64_t index);

struct ExploreResult {
    int64_t explored = 0;
    int64_t failures = 0;
    std::string first_failure; // check name + detail of the first failure
    std::optional<Scenario> counterexample;
};

// Runs every schedule and applies the agreement and lock-in oracles to
// each trace. Throws SpaceTooLarge when the space exceeds opt.budget.
ExploreResult explore(const ExploreOptions& opt);

} // namespace tsbft
