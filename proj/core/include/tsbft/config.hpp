// Copyright 2026 the tsbft authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file or http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace tsbft {

using Tick = int64_t;   // simulated time, integer ticks
using NodeId = int;     // 0-based node identifier
using Round = int;      // 1-based round number

// Deliberate single-rule protocol faults, used to show that the trace
// checks actually reject broken executions.
enum class Mutation {
    None,
    // Commit on 3f+1 matching votes instead of 4f+1.
    CommitThresholdMinusF,
    // Leaders propose their own initial value regardless of the lockset,
    // and validators stop enforcing the value constraint.
    DropProposalConstraint,
    // Timeouts stay at their base durations in every round.
    NoTimeoutDoubling,
};

std::string mutation_name(Mutation m);
std::optional<Mutation> mutation_from_name(std::string_view name);

// Protocol parameters. The population is fixed at n = 5f+1; the two vote
// thresholds are 4f+1 (commit, lockset size) and 2f+1 (value constraint).
class Config {
public:
    Config(int f, Tick to_vote_base, Tick to_commit_base,
           Mutation mutation = Mutation::None)
        : f_(f),
          to_vote_base_(to_vote_base),
          to_commit_base_(to_commit_base),
          mutation_(mutation) {
        if (f < 1) {
            throw std::invalid_argument("config: f must be >= 1");
        }
        if (to_vote_base < 1) {
            throw std::invalid_argument("config: vote timeout must be >= 1");
        }
        if (to_commit_base <= to_vote_base) {
            throw std::invalid_argument(
                "config: commit timeout must exceed vote timeout");
        }
    }

    int f() const { return f_; }
    int n() const { return 5 * f_ + 1; }
    Tick to_vote_base() const { return to_vote_base_; }
    Tick to_commit_base() const { return to_commit_base_; }
    Mutation mutation() const { return mutation_; }

    int quorum_hi() const { return 4 * f_ + 1; }
    int quorum_lo() const { return 2 * f_ + 1; }

    // Votes a node waits for before committing. Equals quorum_hi unless the
    // threshold mutation is active.
    int commit_quorum() const {
        return mutation_ == Mutation::CommitThresholdMinusF ? 3 * f_ + 1
                                                            : quorum_hi();
    }

    bool constraint_enabled() const {
        return mutation_ != Mutation::DropProposalConstraint;
    }

    bool doubling_enabled() const {
        return mutation_ != Mutation::NoTimeoutDoubling;
    }

    // Per-round timeout durations; both double each round unless disabled.
    Tick to_vote_for(Round r) const { return scale(to_vote_base_, r); }
    Tick to_commit_for(Round r) const { return scale(to_commit_base_, r); }

private:
    Tick scale(Tick base, Round r) const;

    int f_;
    Tick to_vote_base_;
    Tick to_commit_base_;
    Mutation mutation_;
};

// Time at which every correct node enters round r when no round ends early:
// the sum of the first r-1 commit timeouts.
Tick round_entry_time(const Config& cfg, Round r);

// Smallest round whose entry lies at or after gst and whose timeouts leave
// room for a proposal round trip under the post-gst delay bound: the vote
// timeout must cover 2*delta and the commit timeout a further 2*delta.
// Empty when no such round exists within the representable range.
std::optional<Round> first_adequate_round(const Config& cfg, Tick gst,
                                          Tick delta);

NodeId leader_of(const Config& cfg, Round r);

} // namespace tsbft
