// Copyright 2026 the tsbft authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file or http://www.apache.org/licenses/LICENSE-2.0

#include "tsbft/adversary.hpp"

#include <algorithm>

namespace tsbft {

namespace {

std::vector<NodeId> all_ids(int n) {
    std::vector<NodeId> ids(n);
    for (int i = 0; i < n; ++i) {
        ids[i] = i;
    }
    return ids;
}

bool is_proposal(const Message& m) {
    return std::holds_alternative<ProposalMessage>(m);
}

// Fabricated values get distinctive payloads so traces stay readable.
Value evil_value() { return Value::of("evil"); }
Value bad_value(NodeId id) { return Value::of("bad" + std::to_string(id)); }
Value alt_value(const Node& node) {
    return Value::of("eq" + std::to_string(node.id()));
}

void equivocate_votes(const StrategySpec& spec, const Node& node,
                      const NodeOutput& out, const StrategyContext& ctx,
                      FilteredOutput& res) {
    int n = ctx.cfg.n();
    std::vector<NodeId> low, high;
    for (NodeId i = 0; i < n; ++i) {
        (i < (n + 1) / 2 ? low : high).push_back(i);
    }
    for (const auto& m : out.outgoing) {
        if (is_proposal(m)) {
            res.sends.push_back(Send{m, all_ids(n)});
            continue;
        }
        VoteMessage v = std::get<VoteMessage>(m);
        VoteMessage alt = v;
        alt.value = node.initial_value() != v.value ? node.initial_value()
                                                    : alt_value(node);
        const VoteMessage& low_vote = spec.flip ? alt : v;
        const VoteMessage& high_vote = spec.flip ? v : alt;
        res.sends.push_back(Send{low_vote, low});
        res.sends.push_back(Send{high_vote, high});
    }
}

std::optional<ProposalMessage> forge_invalid(const StrategySpec& spec,
                                             const Node& node,
                                             const StrategyContext& ctx) {
    Round r = node.current_round();
    const Config& cfg = ctx.cfg;
    const Lockset* prev = r > 1 ? node.lockset_for(r - 1) : nullptr;
    bool valid_prev = prev != nullptr && is_valid_lockset(*prev, r - 1, cfg);

    switch (spec.variant) {
    case InvalidProposalVariant::ShortLockset: {
        std::vector<VoteMessage> just;
        if (r == 1) {
            // Round 1 must carry no justification; one fabricated own vote
            // trips exactly the lockset clause.
            just.push_back(VoteMessage{0, node.id(), Value::empty()});
        } else if (prev != nullptr) {
            just = prev->to_votes();
            if (static_cast<int>(just.size()) >= cfg.quorum_hi()) {
                just.resize(cfg.quorum_hi() - 1);
            }
        }
        return ProposalMessage{r, node.id(), node.initial_value(), just};
    }
    case InvalidProposalVariant::BadValue: {
        // Needs a binding constraint to violate; otherwise any value would
        // be accepted and the proposal would not be invalid at all.
        if (!valid_prev) {
            return std::nullopt;
        }
        if (!prev->best_supported(cfg.quorum_lo()).has_value()) {
            return std::nullopt;
        }
        std::vector<VoteMessage> just = prev->to_votes();
        Value v = node.initial_value();
        if (support_in(just, v) >= cfg.quorum_lo()) {
            v = bad_value(node.id());
        }
        if (support_in(just, v) >= cfg.quorum_lo()) {
            return std::nullopt;
        }
        return ProposalMessage{r, node.id(), v, just};
    }
    case InvalidProposalVariant::EmptyValue: {
        if (r == 1) {
            return ProposalMessage{1, node.id(), Value::empty(), {}};
        }
        if (!valid_prev) {
            return std::nullopt;
        }
        return ProposalMessage{r, node.id(), Value::empty(),
                               prev->to_votes()};
    }
    }
    return std::nullopt;
}

std::optional<ProposalMessage> forge_fabricated(const Node& node,
                                                const StrategyContext& ctx) {
    Round r = node.current_round();
    const Config& cfg = ctx.cfg;
    if (r == 1) {
        return ProposalMessage{1, node.id(), evil_value(), {}};
    }
    // Genuine votes from non-faulty senders, fabricated Empty votes for
    // every faulty id. The fabrication dilutes support to dodge the value
    // constraint whenever the genuine votes alone would not bind it.
    std::vector<VoteMessage> just;
    if (const Lockset* prev = node.lockset_for(r - 1)) {
        for (const auto& [sender, val] : prev->votes()) {
            if (ctx.faulty.count(sender) == 0) {
                just.push_back(VoteMessage{r - 1, sender, val});
            }
        }
    }
    for (NodeId q : ctx.faulty) {
        just.push_back(VoteMessage{r - 1, q, Value::empty()});
    }
    if (static_cast<int>(just.size()) < cfg.quorum_hi()) {
        return std::nullopt;
    }
    auto bound = best_supported(just, cfg.quorum_lo());
    Value v = bound ? *bound : evil_value();
    return ProposalMessage{r, node.id(), v, just};
}

} // namespace

std::string render_strategy(const StrategySpec& s) {
    switch (s.kind) {
    case StrategyKind::Crash:
        return "crash(from=" + std::to_string(s.crash_from) + ")";
    case StrategyKind::MuteLeader:
        return "mute_leader";
    case StrategyKind::EquivocateVotes:
        return s.flip ? "equivocate(flip)" : "equivocate";
    case StrategyKind::InvalidProposal:
        switch (s.variant) {
        case InvalidProposalVariant::ShortLockset:
            return "invalid_proposal(short_lockset)";
        case InvalidProposalVariant::BadValue:
            return "invalid_proposal(bad_value)";
        case InvalidProposalVariant::EmptyValue:
            return "invalid_proposal(empty_value)";
        }
        return "invalid_proposal(short_lockset)";
    case StrategyKind::FabricatedLockset:
        return "fabricated_lockset";
    }
    return "crash(from=0)";
}

std::optional<StrategySpec> parse_strategy(const std::string& text) {
    StrategySpec s;
    if (text.rfind("crash", 0) == 0) {
        s.kind = StrategyKind::Crash;
        s.crash_from = 0;
        auto open = text.find("(from=");
        if (open != std::string::npos) {
            if (text.back() != ')') {
                return std::nullopt;
            }
            std::string num = text.substr(open + 6,
                                          text.size() - open - 7);
            try {
                size_t used = 0;
                s.crash_from = std::stoll(num, &used);
                if (used != num.size()) {
                    return std::nullopt;
                }
            } catch (const std::exception&) {
                return std::nullopt;
            }
        } else if (text != "crash") {
            return std::nullopt;
        }
        return s;
    }
    if (text == "mute_leader") {
        s.kind = StrategyKind::MuteLeader;
        return s;
    }
    if (text == "equivocate" || text == "equivocate(flip)") {
        s.kind = StrategyKind::EquivocateVotes;
        s.flip = text == "equivocate(flip)";
        return s;
    }
    if (text == "invalid_proposal(short_lockset)") {
        s.kind = StrategyKind::InvalidProposal;
        s.variant = InvalidProposalVariant::ShortLockset;
        return s;
    }
    if (text == "invalid_proposal(bad_value)") {
        s.kind = StrategyKind::InvalidProposal;
        s.variant = InvalidProposalVariant::BadValue;
        return s;
    }
    if (text == "invalid_proposal(empty_value)") {
        s.kind = StrategyKind::InvalidProposal;
        s.variant = InvalidProposalVariant::EmptyValue;
        return s;
    }
    if (text == "fabricated_lockset") {
        s.kind = StrategyKind::FabricatedLockset;
        return s;
    }
    return std::nullopt;
}

FilteredOutput broadcast_all(const NodeOutput& out, int n) {
    FilteredOutput res;
    res.timers = out.timers;
    res.sends.reserve(out.outgoing.size());
    for (const auto& m : out.outgoing) {
        res.sends.push_back(Send{m, all_ids(n)});
    }
    return res;
}

FilteredOutput apply_node_strategy(const StrategySpec& spec, const Node& node,
                                   const NodeOutput& out,
                                   const StrategyContext& ctx) {
    int n = ctx.cfg.n();
    FilteredOutput res;

    switch (spec.kind) {
    case StrategyKind::Crash:
        if (ctx.now >= spec.crash_from) {
            return res; // everything dropped, timers included
        }
        return broadcast_all(out, n);

    case StrategyKind::MuteLeader:
        res.timers = out.timers;
        for (const auto& m : out.outgoing) {
            if (!is_proposal(m)) {
                res.sends.push_back(Send{m, all_ids(n)});
            }
        }
        return res;

    case StrategyKind::EquivocateVotes:
        res.timers = out.timers;
        equivocate_votes(spec, node, out, ctx, res);
        return res;

    case StrategyKind::InvalidProposal:
    case StrategyKind::FabricatedLockset: {
        res.timers = out.timers;
        for (const auto& m : out.outgoing) {
            if (!is_proposal(m)) {
                res.sends.push_back(Send{m, all_ids(n)});
            }
        }
        bool leader = leader_of(ctx.cfg, node.current_round()) == node.id();
        if (ctx.entered_round && leader) {
            auto forged = spec.kind == StrategyKind::InvalidProposal
                              ? forge_invalid(spec, node, ctx)
                              : forge_fabricated(node, ctx);
            if (forged) {
                res.sends.push_back(Send{std::move(*forged), all_ids(n)});
            }
        }
        return res;
    }
    }
    return broadcast_all(out, n);
}

} // namespace tsbft
