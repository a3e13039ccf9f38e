// Copyright 2026 the tsbft authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file or http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <string>
#include <vector>

#include "tsbft/trace.hpp"

namespace tsbft {

enum class CheckStatus { Pass, Fail, NotApplicable, Inconclusive };

std::string check_status_name(CheckStatus s);

// Outcome of one trace oracle. A failing check always carries a witness:
// the minimal set of trace records that proves the violation.
struct CheckResult {
    std::string name;
    CheckStatus status = CheckStatus::Pass;
    std::string detail;
    std::vector<std::string> witness;
};

struct Verdict {
    std::string name;   // scenario name
    uint64_t seed = 0;
    std::vector<CheckResult> checks;
    std::map<NodeId, Round> commit_round; // non-faulty commits observed
    std::map<NodeId, Tick> commit_time;
    int64_t messages_sent = 0;

    const CheckResult* find(const std::string& check_name) const;
    bool any_fail() const;
    bool any_inconclusive() const;
    bool all_pass() const { return !any_fail() && !any_inconclusive(); }
};

// Safety: all non-faulty commits, in any round, carry the same value.
CheckResult check_agreement(const Trace& tr);

// Once some non-faulty node commits b in round r*, every later non-faulty
// commit is b, and every later vote by a non-faulty round-r* b-voter is b.
CheckResult check_lock_in(const Trace& tr);

// strict: committed values are initial values of some node. weak: committed
// values were carried by some proposal. Strict violations are reported
// not-applicable when a lockset-fabricating leader is in play, since the
// protocol does not promise strict validity against one.
std::pair<CheckResult, CheckResult> check_validity(const Trace& tr);

// Fault-free fast path: everyone commits in round 1 after one proposal
// delivery and one vote exchange, no timer involved.
CheckResult check_two_step(const Trace& tr);

// Every non-faulty node commits in a round <= r_ok + f + 2, where r_ok is
// the first round at/after gst whose timeouts fit a full exchange.
CheckResult check_liveness(const Trace& tr);

// Structural invariants: vote uniqueness and provenance, commit quorums,
// proposal constraint, timer doubling, message conservation, delay bound.
std::vector<CheckResult> check_invariants(const Trace& tr);

// Applies the checks requested in tr.meta.checks (all when empty) and
// collects summary metrics.
Verdict verify(const Trace& tr);

std::string render_verdict(const Verdict& v);

} // namespace tsbft
