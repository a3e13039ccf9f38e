// Copyright 2026 the tsbft authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file or http://www.apache.org/licenses/LICENSE-2.0

#include "tsbft/messages.hpp"

#include <set>

namespace tsbft {

std::optional<Value> Lockset::best_supported(int min_support) const {
    std::map<Value, int> counts;
    for (const auto& [sender, val] : votes_) {
        if (!val.is_empty()) {
            ++counts[val];
        }
    }
    for (const auto& [val, k] : counts) {
        if (k >= min_support) {
            return val; // std::map iterates in value order, smallest first
        }
    }
    return std::nullopt;
}

bool is_valid_lockset(const std::vector<VoteMessage>& votes,
                      Round expected_round, const Config& cfg) {
    if (static_cast<int>(votes.size()) < cfg.quorum_hi()) {
        return false;
    }
    std::set<NodeId> senders;
    for (const auto& v : votes) {
        if (v.round != expected_round) {
            return false;
        }
        if (!senders.insert(v.sender).second) {
            return false;
        }
    }
    return true;
}

bool is_valid_lockset(const Lockset& ls, Round expected_round,
                      const Config& cfg) {
    return ls.round() == expected_round && ls.size() >= cfg.quorum_hi();
}

std::optional<Value> best_supported(const std::vector<VoteMessage>& votes,
                                    int min_support) {
    std::map<Value, int> counts;
    std::set<NodeId> seen;
    for (const auto& v : votes) {
        if (!seen.insert(v.sender).second) {
            continue;
        }
        if (!v.value.is_empty()) {
            ++counts[v.value];
        }
    }
    for (const auto& [val, k] : counts) {
        if (k >= min_support) {
            return val;
        }
    }
    return std::nullopt;
}

int support_in(const std::vector<VoteMessage>& votes, const Value& v) {
    std::set<NodeId> seen;
    int k = 0;
    for (const auto& vote : votes) {
        if (!seen.insert(vote.sender).second) {
            continue;
        }
        if (vote.value == v) {
            ++k;
        }
    }
    return k;
}

Value choose_proposal_value(const Lockset& ls, const Value& own_initial,
                            const Config& cfg) {
    if (!cfg.constraint_enabled()) {
        return own_initial;
    }
    if (auto bound = ls.best_supported(cfg.quorum_lo())) {
        return *bound;
    }
    return own_initial;
}

} // namespace tsbft
