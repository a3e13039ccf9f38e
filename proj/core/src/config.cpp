// Copyright 2026 the tsbft authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file or http://www.apache.org/licenses/LICENSE-2.0

#include "tsbft/config.hpp"

namespace tsbft {

namespace {

// Rounds past this point would overflow 64-bit tick arithmetic under
// doubling; no reachable execution gets anywhere near it.
constexpr Round kMaxRound = 60;

} // namespace

std::string mutation_name(Mutation m) {
    switch (m) {
    case Mutation::None:
        return "none";
    case Mutation::CommitThresholdMinusF:
        return "commit_threshold_minus_f";
    case Mutation::DropProposalConstraint:
        return "drop_proposal_constraint";
    case Mutation::NoTimeoutDoubling:
        return "no_timeout_doubling";
    }
    return "none";
}

std::optional<Mutation> mutation_from_name(std::string_view name) {
    if (name == "none") return Mutation::None;
    if (name == "commit_threshold_minus_f") return Mutation::CommitThresholdMinusF;
    if (name == "drop_proposal_constraint") return Mutation::DropProposalConstraint;
    if (name == "no_timeout_doubling") return Mutation::NoTimeoutDoubling;
    return std::nullopt;
}

Tick Config::scale(Tick base, Round r) const {
    if (!doubling_enabled() || r <= 1) {
        return base;
    }
    int shift = r - 1;
    if (shift > kMaxRound) {
        throw std::overflow_error("config: round too large for timeout");
    }
    return base << shift;
}

Tick round_entry_time(const Config& cfg, Round r) {
    if (r < 1) {
        throw std::invalid_argument("round_entry_time: rounds start at 1");
    }
    if (!cfg.doubling_enabled()) {
        return static_cast<Tick>(r - 1) * cfg.to_commit_base();
    }
    // Sum of to_commit_base * 2^k for k in [0, r-2) is (2^(r-1) - 1) * base.
    int shift = r - 1;
    if (shift > 60) {
        throw std::overflow_error("round_entry_time: round too large");
    }
    return ((Tick{1} << shift) - 1) * cfg.to_commit_base();
}

std::optional<Round> first_adequate_round(const Config& cfg, Tick gst,
                                          Tick delta) {
    for (Round r = 1; r <= kMaxRound; ++r) {
        Tick entry = round_entry_time(cfg, r);
        Tick tv = cfg.to_vote_for(r);
        Tick tc = cfg.to_commit_for(r);
        if (entry >= gst && tv >= 2 * delta && tc >= tv + 2 * delta) {
            return r;
        }
        if (!cfg.doubling_enabled() &&
            (tv < 2 * delta || tc < tv + 2 * delta)) {
            // Timeouts never grow, so later rounds cannot satisfy this either.
            return std::nullopt;
        }
    }
    return std::nullopt;
}

NodeId leader_of(const Config& cfg, Round r) {
    return (r - 1) % cfg.n();
}

} // namespace tsbft
