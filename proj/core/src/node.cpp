// Copyright 2026 the tsbft authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file or http://www.apache.org/licenses/LICENSE-2.0

#include "tsbft/node.hpp"

#include <algorithm>

namespace tsbft {

std::string proposal_verdict_name(ProposalVerdict v) {
    switch (v) {
    case ProposalVerdict::Ok:
        return "ok";
    case ProposalVerdict::WrongLeader:
        return "wrong_leader";
    case ProposalVerdict::EmptyValue:
        return "empty_value";
    case ProposalVerdict::InvalidLockset:
        return "invalid_lockset";
    case ProposalVerdict::ForgedVote:
        return "forged_vote";
    case ProposalVerdict::ConstraintViolated:
        return "constraint_violated";
    }
    return "ok";
}

void NodeOutput::merge(NodeOutput&& other) {
    for (auto& m : other.outgoing) {
        outgoing.push_back(std::move(m));
    }
    for (auto& t : other.timers) {
        timers.push_back(t);
    }
    if (other.committed_now) {
        committed_now = std::move(other.committed_now);
    }
    round_advanced = round_advanced || other.round_advanced;
}

Node::Node(NodeId id, Value initial, const Config& cfg)
    : id_(id), initial_(std::move(initial)), cfg_(cfg) {
    if (initial_.is_empty()) {
        throw std::invalid_argument("node: initial value must be non-empty");
    }
}

const Lockset* Node::lockset_for(Round r) const {
    auto it = locksets_.find(r);
    return it == locksets_.end() ? nullptr : &it->second;
}

NodeOutput Node::start(const GenuinenessOracle& genuine) {
    if (started_) {
        throw std::logic_error("node: started twice");
    }
    started_ = true;
    return enter_round(1, genuine);
}

NodeOutput Node::on_event(const NodeEvent& ev,
                          const GenuinenessOracle& genuine) {
    if (std::holds_alternative<RoundStart>(ev)) {
        return start(genuine);
    }
    if (const auto* p = std::get_if<ProposalMessage>(&ev)) {
        return on_proposal(*p, genuine);
    }
    if (const auto* v = std::get_if<VoteMessage>(&ev)) {
        return on_vote(*v);
    }
    if (const auto* vt = std::get_if<VoteTimeout>(&ev)) {
        return on_vote_timeout(vt->round);
    }
    return on_commit_timeout(std::get<CommitTimeout>(ev).round, genuine);
}

NodeOutput Node::enter_round(Round r, const GenuinenessOracle& genuine) {
    round_ = r;
    voted_this_round_ = false;
    collect_garbage();

    NodeOutput out;
    out.timers.push_back(
        TimerRequest{TimerKind::Vote, r, cfg_.to_vote_for(r)});
    out.timers.push_back(
        TimerRequest{TimerKind::Commit, r, cfg_.to_commit_for(r)});

    if (leader_of(cfg_, r) == id_) {
        if (auto p = make_proposal()) {
            out.outgoing.push_back(std::move(*p));
        }
    }

    // Proposals that arrived early are handled now, in arrival order.
    if (auto it = buffered_.find(r); it != buffered_.end()) {
        std::vector<ProposalMessage> pending = std::move(it->second);
        buffered_.erase(it);
        for (const auto& p : pending) {
            out.merge(on_proposal(p, genuine));
        }
    }

    // Votes that arrived early may already form a commit quorum.
    try_commit(out);
    return out;
}

std::optional<ProposalMessage> Node::make_proposal() const {
    if (round_ == 1) {
        return ProposalMessage{1, id_, initial_, {}};
    }
    const Lockset* prev = lockset_for(round_ - 1);
    if (prev == nullptr || !is_valid_lockset(*prev, round_ - 1, cfg_)) {
        return std::nullopt;
    }
    Value v = choose_proposal_value(*prev, initial_, cfg_);
    return ProposalMessage{round_, id_, v, prev->to_votes()};
}

ProposalVerdict Node::validate_proposal(
    const ProposalMessage& p, const GenuinenessOracle& genuine) const {
    if (p.sender != leader_of(cfg_, p.round)) {
        return ProposalVerdict::WrongLeader;
    }
    if (p.value.is_empty()) {
        return ProposalVerdict::EmptyValue;
    }
    if (p.round == 1) {
        return p.justification.empty() ? ProposalVerdict::Ok
                                       : ProposalVerdict::InvalidLockset;
    }
    if (!is_valid_lockset(p.justification, p.round - 1, cfg_)) {
        return ProposalVerdict::InvalidLockset;
    }
    for (const auto& v : p.justification) {
        if (!genuine.genuine(v)) {
            return ProposalVerdict::ForgedVote;
        }
    }
    if (cfg_.constraint_enabled()) {
        // When some value is locked by 2f+1 support, the proposal must
        // carry one of the locked values (any qualifier, not necessarily
        // the smallest).
        if (best_supported(p.justification, cfg_.quorum_lo()).has_value() &&
            support_in(p.justification, p.value) < cfg_.quorum_lo()) {
            return ProposalVerdict::ConstraintViolated;
        }
    }
    return ProposalVerdict::Ok;
}

NodeOutput Node::on_proposal(const ProposalMessage& p,
                             const GenuinenessOracle& genuine) {
    NodeOutput out;
    if (p.round > round_) {
        buffered_[p.round].push_back(p);
        return out;
    }
    if (p.round < round_ || voted_this_round_) {
        return out;
    }
    if (validate_proposal(p, genuine) != ProposalVerdict::Ok) {
        return out;
    }
    do_vote(p.value, out);
    try_commit(out);
    return out;
}

NodeOutput Node::on_vote(const VoteMessage& v) {
    NodeOutput out;
    record_vote(v);
    if (v.round == round_) {
        try_commit(out);
    }
    return out;
}

NodeOutput Node::on_vote_timeout(Round armed_round) {
    NodeOutput out;
    if (armed_round != round_ || voted_this_round_) {
        return out;
    }
    // No valid proposal arrived in time: vote Empty in round 1, repeat the
    // previous round's vote afterwards.
    Value v = round_ == 1 ? Value::empty()
                          : last_vote_.value_or(Value::empty());
    do_vote(v, out);
    try_commit(out);
    return out;
}

NodeOutput Node::on_commit_timeout(Round armed_round,
                                   const GenuinenessOracle& genuine) {
    NodeOutput out;
    if (armed_round != round_) {
        return out;
    }
    // The round is over, committed or not; a committed node keeps
    // participating so that others can still assemble quorums.
    out.round_advanced = true;
    out.merge(enter_round(round_ + 1, genuine));
    return out;
}

void Node::do_vote(const Value& v, NodeOutput& out) {
    VoteMessage vote{round_, id_, v};
    voted_this_round_ = true;
    last_vote_ = v;
    record_vote(vote);
    out.outgoing.push_back(vote);
}

void Node::try_commit(NodeOutput& out) {
    if (committed_) {
        return;
    }
    const Lockset* ls = lockset_for(round_);
    if (ls == nullptr) {
        return;
    }
    if (auto b = ls->best_supported(cfg_.commit_quorum())) {
        committed_ = *b;
        commit_round_ = round_;
        out.committed_now = *b;
    }
}

void Node::record_vote(const VoteMessage& v) {
    if (v.round < round_ - 1 && v.round != commit_round_.value_or(0)) {
        return;
    }
    auto it = locksets_.find(v.round);
    if (it == locksets_.end()) {
        it = locksets_.emplace(v.round, Lockset{v.round}).first;
    }
    it->second.add(v);
}

void Node::collect_garbage() {
    for (auto it = locksets_.begin(); it != locksets_.end();) {
        if (it->first < round_ - 1 && it->first != commit_round_.value_or(0)) {
            it = locksets_.erase(it);
        } else {
            ++it;
        }
    }
    for (auto it = buffered_.begin(); it != buffered_.end();) {
        if (it->first < round_) {
            it = buffered_.erase(it);
        } else {
            ++it;
        }
    }
}

} // namespace tsbft
