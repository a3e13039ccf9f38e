// Copyright 2026 the tsbft authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file or http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <compare>
#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "tsbft/config.hpp"
#include "tsbft/value.hpp"

namespace tsbft {

struct VoteMessage {
    Round round = 0;
    NodeId sender = 0;
    Value value;

    friend bool operator==(const VoteMessage&, const VoteMessage&) = default;
    friend auto operator<=>(const VoteMessage&, const VoteMessage&) = default;
};

// A leader's proposal. For round 1 the justification is empty; for round
// r > 1 it must be a full lockset of round r-1 votes.
struct ProposalMessage {
    Round round = 0;
    NodeId sender = 0;
    Value value;
    std::vector<VoteMessage> justification;

    friend bool operator==(const ProposalMessage&,
                           const ProposalMessage&) = default;
};

using Message = std::variant<ProposalMessage, VoteMessage>;

// The votes of one round as seen by one node, keyed by sender. The first
// vote per sender wins; later conflicting votes are dropped, which defuses
// equivocation at the receiver.
class Lockset {
public:
    explicit Lockset(Round round) : round_(round) {}

    Round round() const { return round_; }

    // False when the vote is for another round or the sender already voted.
    bool add(const VoteMessage& v) {
        if (v.round != round_) {
            return false;
        }
        return votes_.emplace(v.sender, v.value).second;
    }

    int size() const { return static_cast<int>(votes_.size()); }
    bool has(NodeId sender) const { return votes_.count(sender) != 0; }

    std::optional<Value> value_of(NodeId sender) const {
        auto it = votes_.find(sender);
        if (it == votes_.end()) {
            return std::nullopt;
        }
        return it->second;
    }

    int support(const Value& v) const {
        int k = 0;
        for (const auto& [sender, val] : votes_) {
            if (val == v) {
                ++k;
            }
        }
        return k;
    }

    // Smallest non-empty value with at least min_support votes.
    std::optional<Value> best_supported(int min_support) const;

    const std::map<NodeId, Value>& votes() const { return votes_; }

    std::vector<VoteMessage> to_votes() const {
        std::vector<VoteMessage> out;
        out.reserve(votes_.size());
        for (const auto& [sender, val] : votes_) {
            out.push_back(VoteMessage{round_, sender, val});
        }
        return out;
    }

private:
    Round round_;
    std::map<NodeId, Value> votes_;
};

// True iff the votes form a valid lockset for expected_round: at least
// 4f+1 votes, all of that round, all senders distinct.
bool is_valid_lockset(const std::vector<VoteMessage>& votes,
                      Round expected_round, const Config& cfg);
bool is_valid_lockset(const Lockset& ls, Round expected_round,
                      const Config& cfg);

// Smallest non-empty value with at least min_support distinct-sender votes
// (first vote per sender counted).
std::optional<Value> best_supported(const std::vector<VoteMessage>& votes,
                                    int min_support);

int support_in(const std::vector<VoteMessage>& votes, const Value& v);

// Leader's value selection: the smallest non-empty value with 2f+1 support
// in the previous round's lockset, else the leader's own initial value.
// Under the dropped-constraint mutation the lockset is ignored entirely.
Value choose_proposal_value(const Lockset& ls, const Value& own_initial,
                            const Config& cfg);

} // namespace tsbft
