// Copyright 2026 the tsbft authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file or http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>

#include "tsbft/node.hpp"

namespace tsbft {

enum class StrategyKind {
    Crash,           // silent from a given time, timers included
    MuteLeader,      // suppresses own proposals, votes normally
    EquivocateVotes, // different vote values to the two recipient halves
    InvalidProposal, // proposals failing exactly one validation clause
    FabricatedLockset, // locksets padded with fabricated faulty-id votes
};

enum class InvalidProposalVariant { ShortLockset, BadValue, EmptyValue };

struct StrategySpec {
    StrategyKind kind = StrategyKind::Crash;
    Tick crash_from = 0;
    InvalidProposalVariant variant = InvalidProposalVariant::ShortLockset;
    bool flip = false; // swaps the equivocation halves

    friend bool operator==(const StrategySpec&, const StrategySpec&) = default;
};

std::string render_strategy(const StrategySpec& s);
std::optional<StrategySpec> parse_strategy(const std::string& text);

struct AdversarySpec {
    std::map<NodeId, StrategySpec> faulty;

    friend bool operator==(const AdversarySpec&,
                           const AdversarySpec&) = default;

    bool empty() const { return faulty.empty(); }
    std::set<NodeId> faulty_ids() const {
        std::set<NodeId> ids;
        for (const auto& [id, s] : faulty) {
            ids.insert(id);
        }
        return ids;
    }
};

// One broadcast after adversary filtering: the same message content to an
// explicit recipient set.
struct Send {
    Message msg;
    std::vector<NodeId> to;
};

struct FilteredOutput {
    std::vector<Send> sends;
    std::vector<TimerRequest> timers;
};

// Identity conversion used for non-faulty nodes: every outgoing message is
// broadcast to all n nodes.
FilteredOutput broadcast_all(const NodeOutput& out, int n);

struct StrategyContext {
    const Config& cfg;
    const std::set<NodeId>& faulty;
    Tick now = 0;
    // True when `out` is a round-entry transition; proposal-forging
    // strategies act exactly then.
    bool entered_round = false;
};

FilteredOutput apply_node_strategy(const StrategySpec& spec, const Node& node,
                                   const NodeOutput& out,
                                   const StrategyContext& ctx);

} // namespace tsbft
