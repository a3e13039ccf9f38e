// Copyright 2026 the tsbft authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file or http://www.apache.org/licenses/LICENSE-2.0

// Acceptance gate for the simulator, the protocol, and the trace oracles.
// Each criterion prints exactly one [PASS]/[FAIL] line with its measured
// numbers; the binary exits nonzero when any criterion fails.

#include <bit>
#include <chrono>
#include <cstdint>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "tsbft/explore.hpp"
#include "tsbft/harness.hpp"
#include "tsbft/sim.hpp"
#include "tsbft/verifier.hpp"

using namespace tsbft;

namespace {

struct Timer {
    std::chrono::steady_clock::time_point start =
        std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(
                   std::chrono::steady_clock::now() - start)
            .count();
    }
};

using Outcome = std::pair<bool, std::string>;

const CheckResult* find_check(const Verdict& v, const std::string& name) {
    for (const auto& c : v.checks) {
        if (c.name == name) {
            return &c;
        }
    }
    return nullptr;
}

std::string scenario_path(const std::string& stem) {
    return std::string(TSBFT_SCENARIO_DIR) + "/" + stem + ".scn";
}

Scenario load_scenario(const std::string& stem) {
    return parse_scenario(read_text_file(scenario_path(stem)));
}

// The campaign setting: adversarial delivery (uniform random delays up to
// the stabilization time), rotating fault placement, and one strategy
// applied to f nodes.
Scenario hostile(int f, const StrategySpec& strat) {
    Scenario sc;
    sc.name = "campaign-f" + std::to_string(f);
    sc.f = f;
    sc.gst = 40;
    sc.delta = 2;
    sc.pre_gst_random = std::pair<Tick, Tick>{1, 40};
    sc.faulty_rotate = true;
    sc.seed = 1;
    sc.adversary.faulty[0] = strat;
    if (f >= 2) {
        sc.adversary.faulty[3] = strat;
    }
    return sc;
}

std::vector<std::pair<std::string, StrategySpec>> strategy_menu() {
    return {
        {"crash", {StrategyKind::Crash, 0, {}, false}},
        {"mute_leader", {StrategyKind::MuteLeader, 0, {}, false}},
        {"equivocate", {StrategyKind::EquivocateVotes, 0, {}, false}},
        {"invalid_proposal",
         {StrategyKind::InvalidProposal, 0,
          InvalidProposalVariant::ShortLockset, false}},
        {"fabricated_lockset", {StrategyKind::FabricatedLockset, 0, {}, false}},
    };
}

// 1. With unit delays and no faults, every node commits in round 1 after
//    exactly two message steps, with n proposals + n^2 votes on the wire.
Outcome fast_path() {
    Timer t;
    bool ok = true;
    std::ostringstream d;
    for (int f : {1, 2, 3}) {
        Scenario sc;
        sc.name = "fastpath-f" + std::to_string(f);
        sc.f = f;
        sc.seed = 1;
        RunOutcome out = run_scenario(sc);
        int n = sc.n();
        int64_t want_msgs = n + int64_t{n} * n;
        bool round1 =
            out.verdict.commit_round.size() == static_cast<size_t>(n);
        for (const auto& [node, round] : out.verdict.commit_round) {
            round1 = round1 && round == 1 &&
                     out.verdict.commit_time.at(node) == 2;
        }
        if (out.exit_code != 0 || !round1 ||
            out.verdict.messages_sent != want_msgs) {
            ok = false;
        }
        d << "f=" << f << ":" << out.verdict.messages_sent << "/"
          << want_msgs << " msgs ";
    }
    double secs = t.seconds();
    ok = ok && secs < 1.0;
    d << "every node commit_round=1 commit_time=2, "
      << std::fixed << std::setprecision(2) << secs << "s<1s";
    return {ok, d.str()};
}

// 2. Random pre-stabilization delays, rotating faults, five strategies:
//    agreement and lock-in never fail across 1000 seeds at f=1 and 200
//    seeds at f=2.
Outcome safety_campaign() {
    bool ok = true;
    std::ostringstream d;
    int64_t total = 0;
    for (const auto& [label, strat] : strategy_menu()) {
        for (int f : {1, 2}) {
            Scenario sc = hostile(f, strat);
            sc.checks = {"agreement", "lock_in"};
            sc.horizon_ticks = 2000;
            BatchOutcome b = run_batch(sc, 1, f == 1 ? 1000 : 200);
            total += b.runs;
            if (b.failed_runs != 0) {
                ok = false;
                d << label << "/f=" << f << " failed=" << b.failed_runs
                  << " ";
            }
        }
    }
    if (ok) {
        d << total << " runs, 0 agreement or lock-in failures";
    }
    return {ok, d.str()};
}

// 3. Same hostile setting: the liveness oracle never reports a violation,
//    at most 1% of runs are inconclusive at the base horizon, and every
//    inconclusive run resolves to a pass once the horizon is doubled.
Outcome liveness_campaign() {
    bool ok = true;
    std::ostringstream d;
    int total_inconclusive = 0;
    for (const auto& [label, strat] : strategy_menu()) {
        Scenario sc = hostile(1, strat);
        sc.checks = {"liveness"};
        sc.horizon_ticks = 1000;
        int inconclusive = 0;
        for (uint64_t seed = 1; seed <= 1000; ++seed) {
            RunOutcome out = run_scenario(sc.with_seed(seed));
            const CheckResult* live = find_check(out.verdict, "liveness");
            if (live == nullptr || live->status == CheckStatus::Fail) {
                ok = false;
                d << label << " seed=" << seed << " violated liveness ";
                continue;
            }
            if (live->status != CheckStatus::Inconclusive) {
                continue;
            }
            ++inconclusive;
            bool resolved = false;
            Scenario wide = sc.with_seed(seed);
            for (Tick h = 2000; h <= 16000 && !resolved; h *= 2) {
                wide.horizon_ticks = h;
                RunOutcome again = run_scenario(wide);
                const CheckResult* l2 = find_check(again.verdict, "liveness");
                if (l2 != nullptr && l2->status == CheckStatus::Pass) {
                    resolved = true;
                } else if (l2 == nullptr ||
                           l2->status == CheckStatus::Fail) {
                    break;
                }
            }
            if (!resolved) {
                ok = false;
                d << label << " seed=" << seed << " never resolved ";
            }
        }
        if (inconclusive * 100 > 1000) {
            ok = false;
            d << label << " inconclusive=" << inconclusive << ">1% ";
        }
        total_inconclusive += inconclusive;
    }
    if (ok) {
        d << "5000 runs, 0 violations, " << total_inconclusive
          << " inconclusive (<=1%), all pass at a doubled horizon";
    }
    return {ok, d.str()};
}

// 4. A leader that suppresses its own proposals cannot stop the commit:
//    the stored round-1 votes let everyone commit in round 2, on the vote
//    timeout, with no round-2 proposal in the trace.
Outcome muted_leader_commit() {
    RunOutcome out = run_scenario(load_scenario("faulty_leader_commit"));
    bool ok = out.exit_code == 0;
    int proposed_round2 = 0;
    for (const auto& rec : out.trace.records) {
        if (const auto* p = std::get_if<RecProposed>(&rec)) {
            if (p->round == 2) {
                ++proposed_round2;
            }
        }
    }
    ok = ok && proposed_round2 == 0;
    for (NodeId i = 0; i < 6; ++i) {
        if (i == 1) {
            continue; // the muted node reports no metrics
        }
        ok = ok && out.verdict.commit_round.count(i) != 0 &&
             out.verdict.commit_round.at(i) == 2 &&
             out.verdict.commit_time.at(i) == 51;
    }
    std::ostringstream d;
    d << "round-2 proposals=" << proposed_round2
      << ", all non-faulty commit_round=2 commit_time=51";
    return {ok, d.str()};
}

// 5. A first leader that crashes before proposing forces every node to an
//    empty round-1 vote; the next round commits.
Outcome crashed_leader_recovery() {
    RunOutcome out = run_scenario(load_scenario("crashed_leader"));
    bool ok = out.exit_code == 0;
    int empty_round1_votes = 0;
    for (const auto& rec : out.trace.records) {
        if (const auto* v = std::get_if<RecVoted>(&rec)) {
            if (v->round == 1 && v->node != 0) {
                ok = ok && v->value.is_empty();
                ++empty_round1_votes;
            }
        }
    }
    ok = ok && empty_round1_votes == 5;
    for (NodeId i = 1; i < 6; ++i) {
        ok = ok && out.verdict.commit_round.count(i) != 0 &&
             out.verdict.commit_round.at(i) == 2 &&
             out.verdict.commit_time.at(i) == 32;
    }
    std::ostringstream d;
    d << empty_round1_votes
      << "/5 empty round-1 votes, commit_round=2 commit_time=32";
    return {ok, d.str()};
}

// 6. Bounded-exhaustive exploration at f=1: every schedule with up to
//    three perturbed rounds keeps agreement and lock-in.
Outcome exploration_sweep() {
    Timer t;
    bool ok = true;
    const int64_t want[4] = {1, 931, 45619, 2235331};
    int64_t total = 0;
    for (int rounds = 0; rounds <= 3; ++rounds) {
        ExploreOptions opt;
        opt.rounds = rounds;
        ok = ok && schedule_count(opt) == want[rounds];
        ExploreResult res = explore(opt);
        ok = ok && res.explored == want[rounds] && res.failures == 0;
        total += res.explored;
    }
    double secs = t.seconds();
    ok = ok && secs < 600.0;
    std::ostringstream d;
    d << total << " schedules, 0 failures, " << std::fixed
      << std::setprecision(1) << secs << "s<600s";
    return {ok, d.str()};
}

// 7. Every shipped protocol mutation is caught by at least one oracle.
Outcome mutations_caught() {
    bool ok = true;
    std::ostringstream d;

    ExploreOptions lower;
    lower.rounds = 2;
    lower.mutation = Mutation::CommitThresholdMinusF;
    ExploreResult a = explore(lower);
    ok = ok && a.failures == 584;
    d << "commit_threshold_minus_f:" << a.failures << " agreement fails, ";

    ExploreOptions drop;
    drop.rounds = 2;
    drop.mutation = Mutation::DropProposalConstraint;
    ExploreResult b = explore(drop);
    ok = ok && b.failures == 8274;
    d << "drop_proposal_constraint:" << b.failures << " agreement fails, ";

    RunOutcome c = run_scenario(load_scenario("no_doubling_detector"));
    const CheckResult* live = find_check(c.verdict, "liveness");
    const CheckResult* doubling =
        find_check(c.verdict, "inv_timer_doubling");
    bool caught = c.exit_code == 1 && live != nullptr &&
                  live->status == CheckStatus::Fail && doubling != nullptr &&
                  doubling->status == CheckStatus::Fail;
    ok = ok && caught;
    d << "no_timeout_doubling:"
      << (caught ? "liveness+timer-doubling fail" : "missed");
    return {ok, d.str()};
}

// 8. Equal seeds give byte-identical traces and verdicts.
Outcome determinism() {
    auto identical = [](const Scenario& sc) {
        RunOutcome a = run_scenario(sc);
        RunOutcome b = run_scenario(sc);
        return serialize_trace(a.trace) == serialize_trace(b.trace) &&
               render_verdict(a.verdict) == render_verdict(b.verdict);
    };
    bool ok = identical(load_scenario("fastpath"));
    ok = ok && identical(load_scenario("faulty_leader_commit"));
    Scenario camp =
        hostile(1, {StrategyKind::EquivocateVotes, 0, {}, false});
    camp.horizon_ticks = 2000;
    ok = ok && identical(camp.with_seed(123));
    return {ok, "3 scenarios rerun, traces and verdicts byte-identical"};
}

// 9. Quorum arithmetic, brute-forced: any two commit quorums (4f+1 of
//    5f+1 nodes) overlap in at least 3f+1 nodes with equality achieved,
//    and a commit quorum plus a proposal-support quorum exceed n.
Outcome quorum_overlap() {
    bool ok = true;
    std::ostringstream d;
    for (int f = 1; f <= 4; ++f) {
        int n = 5 * f + 1;
        int q_hi = 4 * f + 1;
        int q_lo = 2 * f + 1;
        ok = ok && q_hi + q_lo == 6 * f + 2 && q_hi + q_lo > n;

        std::vector<uint32_t> quorums;
        for (uint32_t mask = 0; mask < (uint32_t{1} << n); ++mask) {
            if (std::popcount(mask) == q_hi) {
                quorums.push_back(mask);
            }
        }
        int min_overlap = n;
        for (size_t i = 0; i < quorums.size(); ++i) {
            for (size_t j = i + 1; j < quorums.size(); ++j) {
                min_overlap = std::min(
                    min_overlap, std::popcount(quorums[i] & quorums[j]));
            }
        }
        ok = ok && min_overlap == 3 * f + 1;
        d << "f=" << f << ":" << min_overlap << "=3f+1 ";
    }
    d << "(minimum overlap over all quorum pairs)";
    return {ok, d.str()};
}

} // namespace

int main() {
    struct Criterion {
        const char* title;
        Outcome (*fn)();
    };
    const std::vector<Criterion> criteria = {
        {"fault-free runs commit in one round of two steps", fast_path},
        {"agreement and lock-in hold across hostile campaigns",
         safety_campaign},
        {"liveness holds with bounded inconclusive runs", liveness_campaign},
        {"a muted leader cannot prevent the round-2 commit",
         muted_leader_commit},
        {"a crashed first leader yields empty votes, then commit",
         crashed_leader_recovery},
        {"exhaustive schedule exploration finds no failure",
         exploration_sweep},
        {"every protocol mutation is caught by an oracle", mutations_caught},
        {"equal seeds reproduce runs byte for byte", determinism},
        {"commit quorums overlap in 3f+1 nodes", quorum_overlap},
    };

    int failed = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        Timer t;
        Outcome out;
        try {
            out = criteria[i].fn();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        if (!out.first) {
            ++failed;
        }
        std::cout << (out.first ? "[PASS] " : "[FAIL] ") << (i + 1) << ". "
                  << criteria[i].title << ": " << out.second << " ("
                  << std::fixed << std::setprecision(2) << t.seconds()
                  << "s)" << std::endl;
    }
    if (failed == 0) {
        std::cout << "acceptance: all " << criteria.size()
                  << " criteria passed" << std::endl;
    } else {
        std::cout << "acceptance: " << failed << " of " << criteria.size()
                  << " criteria FAILED" << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
