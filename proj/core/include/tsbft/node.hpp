// Copyright 2026 the tsbft authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file or http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "tsbft/genuineness.hpp"
#include "tsbft/messages.hpp"

namespace tsbft {

enum class TimerKind { Vote, Commit };

// Request to the driver: fire a timer of this kind, tagged with the round
// it was armed in, after `duration` ticks.
struct TimerRequest {
    TimerKind kind = TimerKind::Vote;
    Round round = 0;
    Tick duration = 0;

    friend bool operator==(const TimerRequest&, const TimerRequest&) = default;
};

enum class ProposalVerdict {
    Ok,
    WrongLeader,
    EmptyValue,
    InvalidLockset,
    ForgedVote,
    ConstraintViolated,
};

std::string proposal_verdict_name(ProposalVerdict v);

// Events a node can receive, in the driver's chosen order.
struct RoundStart {};
struct VoteTimeout {
    Round round = 0;
};
struct CommitTimeout {
    Round round = 0;
};
using NodeEvent =
    std::variant<RoundStart, ProposalMessage, VoteMessage, VoteTimeout,
                 CommitTimeout>;

// Externally visible effects of one transition. Every message in
// `outgoing` is a broadcast to all n nodes including the sender.
struct NodeOutput {
    std::vector<Message> outgoing;
    std::vector<TimerRequest> timers;
    std::optional<Value> committed_now;
    bool round_advanced = false;

    void merge(NodeOutput&& other);
};

// One consensus participant. Transitions are deterministic functions of
// (state, event, config); all I/O is carried in NodeOutput.
class Node {
public:
    Node(NodeId id, Value initial, const Config& cfg);

    NodeId id() const { return id_; }
    const Value& initial_value() const { return initial_; }
    Round current_round() const { return round_; }
    bool voted_this_round() const { return voted_this_round_; }
    const std::optional<Value>& last_vote() const { return last_vote_; }
    const std::optional<Value>& committed() const { return committed_; }
    std::optional<Round> commit_round() const { return commit_round_; }

    // Stored votes for a round, if any are retained.
    const Lockset* lockset_for(Round r) const;

    // Enters round 1. Must be called exactly once, before any other event.
    NodeOutput start(const GenuinenessOracle& genuine);

    NodeOutput on_event(const NodeEvent& ev, const GenuinenessOracle& genuine);

    NodeOutput on_proposal(const ProposalMessage& p,
                           const GenuinenessOracle& genuine);
    NodeOutput on_vote(const VoteMessage& v);
    NodeOutput on_vote_timeout(Round armed_round);
    NodeOutput on_commit_timeout(Round armed_round,
                                 const GenuinenessOracle& genuine);

    // Leader-side proposal construction for the current round. Round 1:
    // own initial value, empty justification. Later rounds: requires a
    // valid stored lockset of the previous round; absent otherwise.
    std::optional<ProposalMessage> make_proposal() const;

    ProposalVerdict validate_proposal(const ProposalMessage& p,
                                      const GenuinenessOracle& genuine) const;

    // Inserts a vote, first per (sender, round) wins. Votes older than
    // current_round - 1 are dropped unless they are commit evidence.
    void record_vote(const VoteMessage& v);

private:
    NodeOutput enter_round(Round r, const GenuinenessOracle& genuine);
    void do_vote(const Value& v, NodeOutput& out);
    void try_commit(NodeOutput& out);
    void collect_garbage();

    NodeId id_;
    Value initial_;
    Config cfg_;
    Round round_ = 1;
    bool started_ = false;
    bool voted_this_round_ = false;
    std::optional<Value> last_vote_;
    std::optional<Value> committed_;
    std::optional<Round> commit_round_;
    std::map<Round, Lockset> locksets_;
    std::map<Round, std::vector<ProposalMessage>> buffered_;
};

} // namespace tsbft
