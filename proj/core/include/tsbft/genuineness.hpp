// Copyright 2026 the tsbft authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file or http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <set>
#include <stdexcept>

#include "tsbft/messages.hpp"

namespace tsbft {

// Stand-in for unforgeable signatures: a validator can ask whether a vote
// embedded in a lockset was genuinely emitted by its claimed sender. Faulty
// senders can "sign" anything; non-faulty votes must really have been sent.
class GenuinenessOracle {
public:
    virtual ~GenuinenessOracle() = default;
    virtual bool genuine(const VoteMessage& v) const = 0;
};

// Accepts every vote; for unit tests that exercise node logic in isolation.
class TrustingOracle : public GenuinenessOracle {
public:
    bool genuine(const VoteMessage&) const override { return true; }
};

// Thrown when an adversary strategy tries to fabricate a vote attributed to
// a non-faulty sender. This is a bug in the strategy, not a protocol event.
class UnforgeableViolation : public std::runtime_error {
public:
    explicit UnforgeableViolation(const std::string& what)
        : std::runtime_error(what) {}
};

// Registry of every vote actually broadcast during a run, plus the faulty
// set. A vote is genuine iff its sender is faulty or the exact vote was
// really sent.
class GenuinenessRegistry : public GenuinenessOracle {
public:
    GenuinenessRegistry() = default;
    explicit GenuinenessRegistry(std::set<NodeId> faulty)
        : faulty_(std::move(faulty)) {}

    void set_faulty(std::set<NodeId> faulty) { faulty_ = std::move(faulty); }
    bool is_faulty(NodeId id) const { return faulty_.count(id) != 0; }
    const std::set<NodeId>& faulty() const { return faulty_; }

    void record_sent(const VoteMessage& v) { sent_.insert(v); }

    bool genuine(const VoteMessage& v) const override {
        return is_faulty(v.sender) || sent_.count(v) != 0;
    }

    // Aborts if the proposal's justification embeds a vote that was never
    // sent and whose claimed sender is non-faulty.
    void enforce_genuine_justification(const ProposalMessage& p) const {
        for (const auto& v : p.justification) {
            if (!genuine(v)) {
                throw UnforgeableViolation(
                    "fabricated vote attributed to non-faulty sender " +
                    std::to_string(v.sender));
            }
        }
    }

private:
    std::set<NodeId> faulty_;
    std::set<VoteMessage> sent_;
};

} // namespace tsbft
