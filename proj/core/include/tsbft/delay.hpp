// Copyright 2026 the tsbft authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file or http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "tsbft/trace.hpp"

namespace tsbft {

// Thrown when a scripted delay would break the post-stabilization bound
// between two non-faulty nodes. This is a scenario bug, not a protocol
// event, so the run aborts.
class DelayBoundViolation : public std::runtime_error {
public:
    explicit DelayBoundViolation(const std::string& what)
        : std::runtime_error(what) {}
};

// One scripted delay rule. Unset filters match everything; the first
// matching rule wins. Rules apply before gst only, unless `always` is set,
// in which case the post-gst bound is still enforced for non-faulty pairs.
struct DelayRule {
    std::optional<MsgKind> kind;
    std::optional<Round> round;
    std::optional<NodeId> from;
    std::optional<NodeId> to;
    bool always = false;
    Tick delay = 1;

    bool matches(MsgKind k, Round r, NodeId f, NodeId t) const {
        return (!kind || *kind == k) && (!round || *round == r) &&
               (!from || *from == f) && (!to || *to == t);
    }

    friend bool operator==(const DelayRule&, const DelayRule&) = default;
};

// Per-edge delay assignment under the stabilization-time model: before gst
// delays are adversary-controlled (scripted rules, then a seeded-random
// range, then the uniform default); from gst on, every delay between
// non-faulty nodes is at most delta.
class DelayModel {
public:
    DelayModel(Tick gst, Tick delta, Tick post_gst_delay, uint64_t seed,
               std::optional<std::pair<Tick, Tick>> pre_gst_random,
               std::vector<DelayRule> rules);

    Tick gst() const { return gst_; }
    Tick delta() const { return delta_; }

    // Delay for one message on one edge. `nonfaulty_pair` is true when
    // both endpoints are non-faulty, which arms the post-gst bound check.
    Tick delay_for(MsgKind kind, Round round, NodeId from, NodeId to,
                   Tick send_time, bool nonfaulty_pair) const;

private:
    Tick random_delay(NodeId from, NodeId to, Tick send_time, MsgKind kind,
                      Round round) const;

    Tick gst_;
    Tick delta_;
    Tick post_gst_delay_;
    uint64_t seed_;
    std::optional<std::pair<Tick, Tick>> pre_gst_random_;
    std::vector<DelayRule> rules_;
};

// SplitMix64 step; the stock mixer for seeded, allocation-free randomness.
uint64_t splitmix64(uint64_t x);

} // namespace tsbft
