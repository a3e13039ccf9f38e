// Copyright 2026 the tsbft authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file or http://www.apache.org/licenses/LICENSE-2.0

#include "tsbft/explore.hpp"

#include <sstream>

#include "tsbft/sim.hpp"
#include "tsbft/verifier.hpp"

namespace tsbft {

namespace {

std::vector<AdversarySpec> behaviors_for(const ExploreOptions& opt) {
    return opt.behaviors.empty() ? default_behaviors(opt.f) : opt.behaviors;
}

int choices_per_round(int n) { return (n + 1) * (n + 1); }

} // namespace

std::vector<AdversarySpec> default_behaviors(int f) {
    int n = 5 * f + 1;
    std::vector<AdversarySpec> out;
    out.push_back(AdversarySpec{});
    for (NodeId id = 0; id < n; ++id) {
        AdversarySpec a;
        a.faulty[id] = StrategySpec{StrategyKind::Crash, 0, {}, false};
        out.push_back(std::move(a));
    }
    for (NodeId id = 0; id < n; ++id) {
        for (bool flip : {false, true}) {
            AdversarySpec a;
            a.faulty[id] =
                StrategySpec{StrategyKind::EquivocateVotes, 0, {}, flip};
            out.push_back(std::move(a));
        }
    }
    return out;
}

std::vector<AdversarySpec> crash_only_behaviors(int f) {
    int n = 5 * f + 1;
    std::vector<AdversarySpec> out;
    for (NodeId id = 0; id < n; ++id) {
        AdversarySpec a;
        a.faulty[id] = StrategySpec{StrategyKind::Crash, 0, {}, false};
        out.push_back(std::move(a));
    }
    return out;
}

int64_t schedule_count(const ExploreOptions& opt) {
    if (opt.rounds < 0) {
        throw std::invalid_argument("explore: rounds must be >= 0");
    }
    if (opt.rounds == 0) {
        return 1;
    }
    int n = 5 * opt.f + 1;
    int64_t per_round = choices_per_round(n);
    int64_t count = static_cast<int64_t>(behaviors_for(opt).size());
    for (int r = 0; r < opt.rounds; ++r) {
        if (count > (INT64_MAX / per_round)) {
            return INT64_MAX;
        }
        count *= per_round;
    }
    return count;
}

Scenario schedule_scenario(const ExploreOptions& opt, int64_t index) {
    int n = 5 * opt.f + 1;
    int64_t per_round = choices_per_round(n);
    auto behaviors = behaviors_for(opt);

    Scenario sc;
    sc.f = opt.f;
    sc.to_vote_base = opt.to_vote_base;
    sc.to_commit_base = opt.to_commit_base;
    sc.mutation = opt.mutation;
    sc.delta = 1;
    sc.checks = {"agreement", "lock_in"};
    sc.name = "explore-" + std::to_string(index);

    Config cfg = sc.config();
    // Perturbed rounds, then one clean round for stragglers to land and
    // one more to commit.
    Tick horizon = round_entry_time(cfg, opt.rounds + 2);
    sc.horizon_ticks = horizon;
    sc.gst = horizon + 1; // the whole run is pre-stabilization

    if (opt.rounds == 0) {
        return sc;
    }

    // Mixed-radix decode: behavior index first, then one digit per round.
    int64_t digits = index;
    int64_t rounds_span = 1;
    for (int r = 0; r < opt.rounds; ++r) {
        rounds_span *= per_round;
    }
    size_t behavior = static_cast<size_t>(digits / rounds_span);
    digits %= rounds_span;
    if (behavior >= behaviors.size()) {
        throw std::invalid_argument("explore: schedule index out of range");
    }
    sc.adversary = behaviors[behavior];

    int64_t place = rounds_span / per_round;
    for (Round r = 1; r <= opt.rounds; ++r) {
        int choice = static_cast<int>(digits / place);
        digits %= place;
        place = place == 1 ? 1 : place / per_round;

        int prefix = choice / (n + 1);        // ids < prefix get it in time
        int straggler = choice % (n + 1) - 1; // -1 = none

        NodeId leader = leader_of(cfg, r);
        for (NodeId to = prefix; to < n; ++to) {
            DelayRule rule;
            rule.kind = MsgKind::Proposal;
            rule.round = r;
            rule.from = leader;
            rule.to = to;
            rule.delay = cfg.to_vote_for(r) + 1;
            sc.delay_rules.push_back(rule);
        }
        if (straggler >= 0) {
            DelayRule rule;
            rule.kind = MsgKind::Vote;
            rule.round = r;
            rule.from = straggler;
            rule.to = leader_of(cfg, r + 1);
            rule.delay = cfg.to_commit_for(r);
            sc.delay_rules.push_back(rule);
        }
    }
    return sc;
}

ExploreResult explore(const ExploreOptions& opt) {
    int64_t count = schedule_count(opt);
    if (count > opt.budget) {
        std::ostringstream msg;
        msg << "schedule space of " << count << " exceeds budget "
            << opt.budget;
        throw SpaceTooLarge(msg.str());
    }

    ExploreResult res;
    for (int64_t i = 0; i < count; ++i) {
        Scenario sc = schedule_scenario(opt, i);
        Trace tr = run(sc);
        Verdict v = verify(tr);
        ++res.explored;
        if (v.any_fail()) {
            ++res.failures;
            if (!res.counterexample) {
                for (const auto& c : v.checks) {
                    if (c.status == CheckStatus::Fail) {
                        res.first_failure =
                            sc.name + ": " + c.name + ": " + c.detail;
                        break;
                    }
                }
                res.counterexample = sc;
            }
        }
    }
    return res;
}

} // namespace tsbft
