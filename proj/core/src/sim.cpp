// Copyright 2026 the tsbft authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file or http://www.apache.org/licenses/LICENSE-2.0

#include "tsbft/sim.hpp"

#include <queue>

#include "tsbft/genuineness.hpp"

namespace tsbft {

namespace {

struct DeliverEvent {
    int mid = 0;
    NodeId from = 0;
    NodeId to = 0;
    Message msg;
};

struct TimerEvent {
    NodeId node = 0;
    TimerKind kind = TimerKind::Vote;
    Round round = 0;
};

struct QueuedEvent {
    Tick t = 0;
    uint64_t seq = 0;
    std::variant<DeliverEvent, TimerEvent> body;
};

// Min-heap by (time, sequence); sequence is unique, so the order is total.
struct LaterFirst {
    bool operator()(const QueuedEvent& a, const QueuedEvent& b) const {
        return a.t != b.t ? a.t > b.t : a.seq > b.seq;
    }
};

class Simulation {
public:
    explicit Simulation(const Scenario& sc)
        : sc_(sc),
          cfg_(sc.config()),
          n_(sc.n()),
          faulty_(sc.adversary.faulty_ids()),
          registry_(faulty_),
          delays_(sc.make_delay_model()),
          horizon_(sc.resolved_horizon()) {
        sc_.validate();
        auto initials = sc_.resolved_initials();
        nodes_.reserve(n_);
        for (NodeId i = 0; i < n_; ++i) {
            nodes_.emplace_back(i, initials[i], cfg_);
        }

        trace_.meta.name = sc_.name;
        trace_.meta.f = sc_.f;
        trace_.meta.to_vote_base = sc_.to_vote_base;
        trace_.meta.to_commit_base = sc_.to_commit_base;
        trace_.meta.mutation = sc_.mutation;
        trace_.meta.gst = sc_.gst;
        trace_.meta.delta = sc_.delta;
        trace_.meta.seed = sc_.seed;
        trace_.meta.horizon_ticks = horizon_;
        trace_.meta.horizon_events = sc_.horizon_events;
        trace_.meta.initials = initials;
        trace_.meta.checks = sc_.checks;
        for (const auto& [id, strat] : sc_.adversary.faulty) {
            trace_.meta.faulty[id] = render_strategy(strat);
        }
    }

    Trace run() {
        for (NodeId i = 0; i < n_; ++i) {
            trace_.records.push_back(RecRoundEntered{0, i, 1});
            NodeOutput out = nodes_[i].start(registry_);
            process_output(i, out, /*entered_round=*/true);
        }

        int64_t processed = 0;
        std::string reason;
        Tick end_t = 0;

        while (true) {
            if (queue_.empty()) {
                reason = "quiescent";
                end_t = now_;
                break;
            }
            if (queue_.top().t > horizon_) {
                reason = "horizon_ticks";
                end_t = horizon_;
                break;
            }
            if (processed >= sc_.horizon_events) {
                reason = "horizon_events";
                end_t = now_;
                break;
            }
            QueuedEvent ev = queue_.top();
            queue_.pop();
            now_ = ev.t;
            ++processed;

            if (const auto* d = std::get_if<DeliverEvent>(&ev.body)) {
                deliver(*d);
            } else {
                fire_timer(std::get<TimerEvent>(ev.body));
            }

            if (all_committed()) {
                reason = "all_committed";
                end_t = now_;
                break;
            }
        }

        trace_.end_time = end_t;
        trace_.end_reason = reason;
        trace_.events = processed;
        return std::move(trace_);
    }

private:
    void deliver(const DeliverEvent& d) {
        Node& node = nodes_[d.to];
        if (const auto* p = std::get_if<ProposalMessage>(&d.msg)) {
            trace_.records.push_back(RecMsgDelivered{
                now_, d.mid, MsgKind::Proposal, d.from, d.to, p->round,
                Value{}, pid_of_.at(d.mid)});
            NodeOutput out = node.on_proposal(*p, registry_);
            process_output(d.to, out, out.round_advanced);
        } else {
            const VoteMessage& v = std::get<VoteMessage>(d.msg);
            trace_.records.push_back(RecMsgDelivered{
                now_, d.mid, MsgKind::Vote, d.from, d.to, v.round, v.value,
                0});
            NodeOutput out = node.on_vote(v);
            process_output(d.to, out, out.round_advanced);
        }
    }

    void fire_timer(const TimerEvent& tev) {
        Node& node = nodes_[tev.node];
        bool stale = tev.round != node.current_round();
        trace_.records.push_back(
            RecTimerFired{now_, tev.node, tev.kind, tev.round, stale});
        NodeOutput out = tev.kind == TimerKind::Vote
                             ? node.on_vote_timeout(tev.round)
                             : node.on_commit_timeout(tev.round, registry_);
        process_output(tev.node, out, out.round_advanced);
    }

    void process_output(NodeId id, const NodeOutput& out, bool entered_round) {
        Node& node = nodes_[id];
        if (out.round_advanced) {
            trace_.records.push_back(
                RecRoundEntered{now_, id, node.current_round()});
        }

        FilteredOutput filt;
        auto fit = sc_.adversary.faulty.find(id);
        if (fit != sc_.adversary.faulty.end()) {
            StrategyContext ctx{cfg_, faulty_, now_, entered_round};
            filt = apply_node_strategy(fit->second, node, out, ctx);
        } else {
            filt = broadcast_all(out, n_);
        }

        for (const auto& tr : filt.timers) {
            trace_.records.push_back(
                RecTimerArmed{now_, id, tr.kind, tr.round, tr.duration});
            enqueue(now_ + tr.duration, TimerEvent{id, tr.kind, tr.round});
        }
        for (const auto& send : filt.sends) {
            emit_send(id, send);
        }
        if (out.committed_now) {
            trace_.records.push_back(RecCommitted{
                now_, id, *node.commit_round(), *out.committed_now});
        }
    }

    void emit_send(NodeId from, const Send& send) {
        if (const auto* p = std::get_if<ProposalMessage>(&send.msg)) {
            if (p->sender != from) {
                throw UnforgeableViolation(
                    "proposal sender spoofed by node " + std::to_string(from));
            }
            registry_.enforce_genuine_justification(*p);
            int pid = next_pid_++;
            trace_.records.push_back(RecProposed{now_, from, p->round,
                                                 p->value, pid,
                                                 p->justification});
            for (NodeId to : send.to) {
                schedule(MsgKind::Proposal, p->round, from, to, send.msg,
                         Value{}, pid);
            }
        } else {
            const VoteMessage& v = std::get<VoteMessage>(send.msg);
            if (v.sender != from) {
                throw UnforgeableViolation(
                    "vote sender spoofed by node " + std::to_string(from));
            }
            registry_.record_sent(v);
            trace_.records.push_back(
                RecVoted{now_, from, v.round, v.value});
            for (NodeId to : send.to) {
                schedule(MsgKind::Vote, v.round, from, to, send.msg, v.value,
                         0);
            }
        }
    }

    void schedule(MsgKind kind, Round round, NodeId from, NodeId to,
                  const Message& msg, const Value& vote_value, int pid) {
        bool nf_pair =
            faulty_.count(from) == 0 && faulty_.count(to) == 0;
        Tick delay = delays_.delay_for(kind, round, from, to, now_, nf_pair);
        int mid = next_mid_++;
        if (kind == MsgKind::Proposal) {
            pid_of_[mid] = pid;
        }
        trace_.records.push_back(RecMsgSent{now_, mid, kind, from, to,
                                            now_ + delay, round, vote_value,
                                            pid});
        enqueue(now_ + delay, DeliverEvent{mid, from, to, msg});
    }

    void enqueue(Tick t, std::variant<DeliverEvent, TimerEvent> body) {
        queue_.push(QueuedEvent{t, next_seq_++, std::move(body)});
    }

    bool all_committed() const {
        for (NodeId i = 0; i < n_; ++i) {
            if (faulty_.count(i) == 0 && !nodes_[i].committed()) {
                return false;
            }
        }
        return true;
    }

    Scenario sc_;
    Config cfg_;
    int n_;
    std::set<NodeId> faulty_;
    GenuinenessRegistry registry_;
    DelayModel delays_;
    Tick horizon_;
    std::vector<Node> nodes_;
    std::priority_queue<QueuedEvent, std::vector<QueuedEvent>, LaterFirst>
        queue_;
    std::map<int, int> pid_of_; // proposal mid -> pid
    uint64_t next_seq_ = 0;
    int next_mid_ = 1;
    int next_pid_ = 1;
    Tick now_ = 0;
    Trace trace_;
};

} // namespace

Trace run(const Scenario& sc) {
    Simulation sim(sc);
    return sim.run();
}

} // namespace tsbft
