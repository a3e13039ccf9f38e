// Copyright 2026 the tsbft authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file or http://www.apache.org/licenses/LICENSE-2.0

#include "tsbft/replay.hpp"

#include <map>

#include "tsbft/genuineness.hpp"
#include "tsbft/node.hpp"

namespace tsbft {

namespace {

// Walks one node's recorded effects in trace order. The matcher consumes
// them as the re-driven node produces the same effects.
class EffectCursor {
public:
    void add(const TraceRecord* r) { expected_.push_back(r); }

    template <typename T>
    const T* take() {
        if (pos_ >= expected_.size()) {
            return nullptr;
        }
        const T* r = std::get_if<T>(expected_[pos_]);
        if (r != nullptr) {
            ++pos_;
        }
        return r;
    }

    bool done() const { return pos_ >= expected_.size(); }

    std::string next_text() const {
        return pos_ < expected_.size() ? serialize_record(*expected_[pos_])
                                       : "(no further effects)";
    }

private:
    std::vector<const TraceRecord*> expected_;
    size_t pos_ = 0;
};

class Replayer {
public:
    explicit Replayer(const Trace& tr)
        : tr_(tr), cfg_(tr.meta.config()), n_(tr.meta.n()) {
        std::set<NodeId> faulty;
        for (const auto& [id, strat] : tr_.meta.faulty) {
            faulty.insert(id);
        }
        registry_.set_faulty(std::move(faulty));

        for (NodeId i = 0; i < n_; ++i) {
            if (!tr_.meta.is_faulty(i)) {
                nodes_.emplace(i, Node{i, tr_.meta.initials[i], cfg_});
            }
        }
        cursors_.resize(n_);
        for (const auto& rec : tr_.records) {
            if (const auto* r = std::get_if<RecProposed>(&rec)) {
                by_pid_[r->pid] = r;
            }
            if (auto owner = effect_owner(rec)) {
                cursors_[*owner].add(&rec);
            }
        }
    }

    ReplayResult run() {
        for (NodeId i = 0; i < n_ && result_.ok; ++i) {
            auto it = nodes_.find(i);
            if (it == nodes_.end()) {
                continue;
            }
            now_ = 0;
            expect_round_entry(i, 1);
            if (result_.ok) {
                drive(i, it->second.start(registry_));
            }
        }

        for (const auto& rec : tr_.records) {
            if (!result_.ok) {
                break;
            }
            if (const auto* r = std::get_if<RecMsgSent>(&rec)) {
                if (r->kind == MsgKind::Vote) {
                    registry_.record_sent(
                        VoteMessage{r->round, r->from, r->value});
                }
            } else if (const auto* r = std::get_if<RecMsgDelivered>(&rec)) {
                deliver(*r);
            } else if (const auto* r = std::get_if<RecTimerFired>(&rec)) {
                fire(*r);
            }
        }

        for (NodeId i = 0; i < n_ && result_.ok; ++i) {
            if (nodes_.count(i) != 0 && !cursors_[i].done()) {
                mismatch(i, "(node produced no further effects)");
            }
        }
        return std::move(result_);
    }

private:
    // Which node a record is an effect of; stimuli and faulty-node records
    // return nothing.
    std::optional<NodeId> effect_owner(const TraceRecord& rec) const {
        NodeId id = -1;
        if (const auto* r = std::get_if<RecRoundEntered>(&rec)) {
            id = r->node;
        } else if (const auto* r = std::get_if<RecTimerArmed>(&rec)) {
            id = r->node;
        } else if (const auto* r = std::get_if<RecProposed>(&rec)) {
            id = r->node;
        } else if (const auto* r = std::get_if<RecVoted>(&rec)) {
            id = r->node;
        } else if (const auto* r = std::get_if<RecCommitted>(&rec)) {
            id = r->node;
        } else if (const auto* r = std::get_if<RecMsgSent>(&rec)) {
            id = r->from;
        }
        if (id < 0 || tr_.meta.is_faulty(id)) {
            return std::nullopt;
        }
        return id;
    }

    void deliver(const RecMsgDelivered& d) {
        auto it = nodes_.find(d.to);
        if (it == nodes_.end()) {
            return;
        }
        now_ = d.t;
        ++result_.events_replayed;
        if (d.kind == MsgKind::Vote) {
            drive(d.to, it->second.on_vote(
                            VoteMessage{d.round, d.from, d.value}));
        } else {
            auto pit = by_pid_.find(d.pid);
            if (pit == by_pid_.end()) {
                mismatch(d.to, "(delivered proposal with unknown pid)");
                return;
            }
            const RecProposed* p = pit->second;
            drive(d.to,
                  it->second.on_proposal(
                      ProposalMessage{p->round, p->node, p->value,
                                      p->justification},
                      registry_));
        }
    }

    void fire(const RecTimerFired& f) {
        auto it = nodes_.find(f.node);
        if (it == nodes_.end()) {
            return;
        }
        now_ = f.t;
        ++result_.events_replayed;
        drive(f.node, f.kind == TimerKind::Vote
                          ? it->second.on_vote_timeout(f.round)
                          : it->second.on_commit_timeout(f.round, registry_));
    }

    void drive(NodeId id, const NodeOutput& out) {
        const Node& node = nodes_.at(id);
        if (out.round_advanced) {
            expect_round_entry(id, node.current_round());
        }
        for (const auto& t : out.timers) {
            if (!result_.ok) {
                return;
            }
            expect_timer(id, t);
        }
        for (const auto& m : out.outgoing) {
            if (!result_.ok) {
                return;
            }
            if (const auto* p = std::get_if<ProposalMessage>(&m)) {
                expect_proposal(id, *p);
            } else {
                expect_vote(id, std::get<VoteMessage>(m));
            }
        }
        if (result_.ok && out.committed_now) {
            expect_commit(id, node.commit_round().value_or(0),
                          *out.committed_now);
        }
    }

    void expect_round_entry(NodeId id, Round r) {
        const auto* rec = cursors_[id].take<RecRoundEntered>();
        if (rec == nullptr || rec->t != now_ || rec->round != r) {
            mismatch(id, serialize_record(RecRoundEntered{now_, id, r}));
        }
    }

    void expect_timer(NodeId id, const TimerRequest& t) {
        const auto* rec = cursors_[id].take<RecTimerArmed>();
        if (rec == nullptr || rec->t != now_ || rec->kind != t.kind ||
            rec->round != t.round || rec->duration != t.duration) {
            mismatch(id, serialize_record(RecTimerArmed{
                             now_, id, t.kind, t.round, t.duration}));
        }
    }

    void expect_vote(NodeId id, const VoteMessage& v) {
        const auto* rec = cursors_[id].take<RecVoted>();
        if (rec == nullptr || rec->t != now_ || rec->round != v.round ||
            rec->value != v.value) {
            mismatch(id,
                     serialize_record(RecVoted{now_, id, v.round, v.value}));
            return;
        }
        expect_sends(id, MsgKind::Vote, v.round, v.value, 0);
    }

    void expect_proposal(NodeId id, const ProposalMessage& p) {
        const auto* rec = cursors_[id].take<RecProposed>();
        if (rec == nullptr || rec->t != now_ || rec->round != p.round ||
            rec->value != p.value ||
            rec->justification != p.justification) {
            mismatch(id, serialize_record(RecProposed{now_, id, p.round,
                                                      p.value, 0,
                                                      p.justification}));
            return;
        }
        expect_sends(id, MsgKind::Proposal, p.round, Value{}, rec->pid);
    }

    // A broadcast is recorded as one send per recipient, ids ascending.
    void expect_sends(NodeId id, MsgKind kind, Round round,
                      const Value& vote_value, int pid) {
        for (NodeId to = 0; to < n_ && result_.ok; ++to) {
            const auto* rec = cursors_[id].take<RecMsgSent>();
            bool ok = rec != nullptr && rec->t == now_ && rec->kind == kind &&
                      rec->to == to && rec->round == round;
            if (ok && kind == MsgKind::Vote) {
                ok = rec->value == vote_value;
            }
            if (ok && kind == MsgKind::Proposal) {
                ok = rec->pid == pid;
            }
            if (!ok) {
                mismatch(id, serialize_record(RecMsgSent{
                                 now_, 0, kind, id, to, 0, round, vote_value,
                                 pid}));
            }
        }
    }

    void expect_commit(NodeId id, Round r, const Value& v) {
        const auto* rec = cursors_[id].take<RecCommitted>();
        if (rec == nullptr || rec->t != now_ || rec->round != r ||
            rec->value != v) {
            mismatch(id, serialize_record(RecCommitted{now_, id, r, v}));
        }
    }

    void mismatch(NodeId id, std::string actual) {
        result_.ok = false;
        result_.mismatches.push_back(
            ReplayMismatch{id, cursors_[id].next_text(), std::move(actual)});
    }

    const Trace& tr_;
    Config cfg_;
    int n_;
    GenuinenessRegistry registry_;
    std::map<NodeId, Node> nodes_;
    std::vector<EffectCursor> cursors_;
    std::map<int, const RecProposed*> by_pid_;
    Tick now_ = 0;
    ReplayResult result_;
};

} // namespace

ReplayResult replay(const Trace& tr) {
    Replayer rp(tr);
    return rp.run();
}

} // namespace tsbft
