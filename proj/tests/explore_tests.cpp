// Copyright 2026 the tsbft authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file or http://www.apache.org/licenses/LICENSE-2.0

#include <doctest.h>

#include <stdexcept>
#include <string>
#include <vector>

#include "tsbft/explore.hpp"
#include "tsbft/sim.hpp"
#include "tsbft/verifier.hpp"

using namespace tsbft;

namespace {

const CheckResult* find_check(const Verdict& v, const std::string& name) {
    for (const auto& c : v.checks) {
        if (c.name == name) {
            return &c;
        }
    }
    return nullptr;
}

bool starts_with(const std::string& s, const std::string& prefix) {
    return s.rfind(prefix, 0) == 0;
}

} // namespace

TEST_CASE("behavior catalogs enumerate the fault menu") {
    auto defaults = default_behaviors(1);
    REQUIRE(defaults.size() == 19);
    CHECK(defaults[0].faulty.empty());
    for (size_t i = 1; i < defaults.size(); ++i) {
        CHECK(defaults[i].faulty.size() == 1);
    }
    // Six crash behaviors, one per node, all silent from t=0.
    for (NodeId id = 0; id < 6; ++id) {
        const StrategySpec& s = defaults[1 + id].faulty.at(id);
        CHECK(s.kind == StrategyKind::Crash);
        CHECK(s.crash_from == 0);
    }
    // Then plain and flipped equivocation per node.
    for (NodeId id = 0; id < 6; ++id) {
        const StrategySpec& plain = defaults[7 + 2 * id].faulty.at(id);
        const StrategySpec& flipped = defaults[8 + 2 * id].faulty.at(id);
        CHECK(plain.kind == StrategyKind::EquivocateVotes);
        CHECK_FALSE(plain.flip);
        CHECK(flipped.kind == StrategyKind::EquivocateVotes);
        CHECK(flipped.flip);
    }

    auto crashes = crash_only_behaviors(1);
    REQUIRE(crashes.size() == 6);
    for (NodeId id = 0; id < 6; ++id) {
        CHECK(crashes[id].faulty.at(id).kind == StrategyKind::Crash);
    }

    // n = 11 at f = 2: one clean behavior, 11 crashes, 22 equivocations.
    CHECK(default_behaviors(2).size() == 34);
}

TEST_CASE("schedule space is behaviors times 49 per perturbed round") {
    ExploreOptions opt;
    opt.rounds = 0;
    CHECK(schedule_count(opt) == 1);
    opt.rounds = 1;
    CHECK(schedule_count(opt) == 931);
    opt.rounds = 2;
    CHECK(schedule_count(opt) == 45619);
    opt.rounds = 3;
    CHECK(schedule_count(opt) == 2235331);
    opt.rounds = 4;
    CHECK(schedule_count(opt) == 109531219);

    ExploreOptions crash;
    crash.behaviors = crash_only_behaviors(1);
    crash.rounds = 1;
    CHECK(schedule_count(crash) == 294);
    crash.rounds = 2;
    CHECK(schedule_count(crash) == 14406);

    // f = 2 has 34 behaviors and (11 + 1)^2 = 144 choices per round.
    ExploreOptions wide;
    wide.f = 2;
    wide.rounds = 1;
    CHECK(schedule_count(wide) == 4896);

    ExploreOptions bad;
    bad.rounds = -1;
    CHECK_THROWS_AS(schedule_count(bad), std::invalid_argument);
}

TEST_CASE("index zero delays every round-1 proposal and nothing else") {
    ExploreOptions opt;
    opt.rounds = 1;
    Scenario sc = schedule_scenario(opt, 0);

    CHECK(sc.name == "explore-0");
    CHECK(sc.f == 1);
    CHECK(sc.delta == 1);
    CHECK(sc.to_vote_base == 2);
    CHECK(sc.to_commit_base == 6);
    CHECK(sc.mutation == Mutation::None);
    const std::vector<std::string> want_checks{"agreement", "lock_in"};
    CHECK(sc.checks == want_checks);
    // Horizon covers the perturbed round plus two clean ones; the whole
    // run happens before stabilization.
    CHECK(sc.horizon_ticks == 18);
    CHECK(sc.gst == 19);
    CHECK(sc.adversary.faulty.empty());

    // Choice 0 = prefix 0 (nobody timely), no straggler: the round-1
    // leader's proposal reaches all six nodes only after the vote timeout.
    REQUIRE(sc.delay_rules.size() == 6);
    for (NodeId i = 0; i < 6; ++i) {
        const DelayRule& rule = sc.delay_rules[i];
        CHECK(rule.kind == MsgKind::Proposal);
        CHECK(rule.round == Round{1});
        CHECK(rule.from == NodeId{0});
        CHECK(rule.to == i);
        CHECK(rule.delay == 3); // vote timeout 2, plus one tick
        CHECK_FALSE(rule.always);
    }
}

TEST_CASE("the behavior digit is most significant in the schedule index") {
    ExploreOptions opt;
    opt.rounds = 2;
    // behavior 1 (crash node 0), round-1 choice 48, round-2 choice 10.
    Scenario sc = schedule_scenario(opt, 1 * 49 * 49 + 48 * 49 + 10);

    REQUIRE(sc.adversary.faulty.size() == 1);
    CHECK(sc.adversary.faulty.at(0).kind == StrategyKind::Crash);
    CHECK(sc.adversary.faulty.at(0).crash_from == 0);
    CHECK(sc.horizon_ticks == 42); // rounds 1..3 last 6 + 12 + 24 ticks
    CHECK(sc.gst == 43);

    REQUIRE(sc.delay_rules.size() == 7);
    // Round-1 choice 48: prefix 6 means every proposal is timely, and
    // node 5's vote reaches the round-2 leader only after round 1 ends.
    const DelayRule& straggler1 = sc.delay_rules[0];
    CHECK(straggler1.kind == MsgKind::Vote);
    CHECK(straggler1.round == Round{1});
    CHECK(straggler1.from == NodeId{5});
    CHECK(straggler1.to == NodeId{1});
    CHECK(straggler1.delay == 6); // the round-1 commit timeout

    // Round-2 choice 10 = prefix 1, straggler 2: only node 0 sees the
    // round-2 proposal in time.
    for (NodeId i = 0; i < 5; ++i) {
        const DelayRule& rule = sc.delay_rules[1 + i];
        CHECK(rule.kind == MsgKind::Proposal);
        CHECK(rule.round == Round{2});
        CHECK(rule.from == NodeId{1});
        CHECK(rule.to == NodeId(1 + i));
        CHECK(rule.delay == 5); // round-2 vote timeout 4, plus one tick
    }
    const DelayRule& straggler2 = sc.delay_rules[6];
    CHECK(straggler2.kind == MsgKind::Vote);
    CHECK(straggler2.round == Round{2});
    CHECK(straggler2.from == NodeId{2});
    CHECK(straggler2.to == NodeId{2}); // the round-3 leader
    CHECK(straggler2.delay == 12);     // the round-2 commit timeout
}

TEST_CASE("the last index uses the last behavior; one past throws") {
    ExploreOptions opt;
    opt.rounds = 1;
    Scenario sc = schedule_scenario(opt, 930);
    REQUIRE(sc.adversary.faulty.size() == 1);
    CHECK(sc.adversary.faulty.at(5).kind == StrategyKind::EquivocateVotes);
    CHECK(sc.adversary.faulty.at(5).flip);
    // Choice 48: all proposals timely, node 5 straggles to the next leader.
    REQUIRE(sc.delay_rules.size() == 1);
    CHECK(sc.delay_rules[0].kind == MsgKind::Vote);
    CHECK(sc.delay_rules[0].from == NodeId{5});
    CHECK(sc.delay_rules[0].to == NodeId{1});

    CHECK_THROWS_AS(schedule_scenario(opt, 931), std::invalid_argument);
}

TEST_CASE("an unperturbed schedule has no rules and commits cleanly") {
    ExploreOptions opt;
    opt.rounds = 0;
    Scenario sc = schedule_scenario(opt, 0);
    CHECK(sc.delay_rules.empty());
    CHECK(sc.adversary.faulty.empty());
    CHECK(sc.horizon_ticks == 6);
    CHECK(sc.gst == 7);

    ExploreResult res = explore(opt);
    CHECK(res.explored == 1);
    CHECK(res.failures == 0);
}

TEST_CASE("one perturbed round with every behavior stays safe") {
    ExploreOptions opt;
    opt.rounds = 1;
    ExploreResult res = explore(opt);
    CHECK(res.explored == 931);
    CHECK(res.failures == 0);
    CHECK(res.first_failure.empty());
    CHECK_FALSE(res.counterexample.has_value());
}

TEST_CASE("crash faults with two perturbed rounds stay safe") {
    ExploreOptions opt;
    opt.rounds = 2;
    opt.behaviors = crash_only_behaviors(1);
    ExploreResult res = explore(opt);
    CHECK(res.explored == 14406);
    CHECK(res.failures == 0);
}

TEST_CASE("a lowered commit threshold loses agreement under exploration") {
    ExploreOptions opt;
    opt.rounds = 2;
    opt.mutation = Mutation::CommitThresholdMinusF;
    ExploreResult res = explore(opt);
    CHECK(res.explored == 45619);
    CHECK(res.failures == 584);
    REQUIRE(res.counterexample.has_value());
    CHECK(res.counterexample->name == "explore-19238");
    CHECK(starts_with(res.first_failure, "explore-19238: agreement:"));

    // The counterexample is the mutation's fault, not the schedule's:
    // the same delivery order is safe under the unmutated rule.
    Verdict mutated = verify(run(*res.counterexample));
    const CheckResult* agreement = find_check(mutated, "agreement");
    REQUIRE(agreement != nullptr);
    CHECK(agreement->status == CheckStatus::Fail);

    ExploreOptions clean = opt;
    clean.mutation = Mutation::None;
    Verdict healthy = verify(run(schedule_scenario(clean, 19238)));
    CHECK(healthy.all_pass());
}

TEST_CASE("dropping the proposal constraint loses agreement under"
          " exploration") {
    ExploreOptions opt;
    opt.rounds = 2;
    opt.mutation = Mutation::DropProposalConstraint;
    ExploreResult res = explore(opt);
    CHECK(res.explored == 45619);
    CHECK(res.failures == 8274);
    REQUIRE(res.counterexample.has_value());
    CHECK(res.counterexample->name == "explore-36");
    CHECK(starts_with(res.first_failure, "explore-36: agreement:"));

    ExploreOptions clean = opt;
    clean.mutation = Mutation::None;
    Verdict healthy = verify(run(schedule_scenario(clean, 36)));
    CHECK(healthy.all_pass());
}

TEST_CASE("the budget guard trips before enumerating") {
    ExploreOptions opt;
    opt.rounds = 1;
    opt.budget = 930;
    CHECK_THROWS_WITH_AS(explore(opt),
                         "schedule space of 931 exceeds budget 930",
                         SpaceTooLarge);

    ExploreOptions huge;
    huge.rounds = 4; // 109531219 schedules, far past the default budget
    CHECK_THROWS_AS(explore(huge), SpaceTooLarge);
}
