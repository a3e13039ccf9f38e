// Copyright 2026 the tsbft authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file or http://www.apache.org/licenses/LICENSE-2.0

#include "tsbft/verifier.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "tsbft/scenario.hpp"

namespace tsbft {

namespace {

// Pointer views over one trace, split by record kind. Faulty filtering is
// done by the individual checks; views keep trace order.
struct Index {
    explicit Index(const Trace& tr) : meta(tr.meta) {
        for (const auto& rec : tr.records) {
            if (const auto* r = std::get_if<RecCommitted>(&rec)) {
                if (!meta.is_faulty(r->node)) {
                    commits.push_back(r);
                }
            } else if (const auto* r = std::get_if<RecVoted>(&rec)) {
                if (!meta.is_faulty(r->node)) {
                    votes.push_back(r);
                }
            } else if (const auto* r = std::get_if<RecProposed>(&rec)) {
                proposals.push_back(r);
                by_pid[r->pid] = r;
            } else if (const auto* r = std::get_if<RecMsgSent>(&rec)) {
                sent.push_back(r);
                sent_by_mid[r->mid] = r;
            } else if (const auto* r = std::get_if<RecMsgDelivered>(&rec)) {
                delivered.push_back(r);
            } else if (const auto* r = std::get_if<RecTimerFired>(&rec)) {
                fired.push_back(r);
            } else if (const auto* r = std::get_if<RecTimerArmed>(&rec)) {
                armed.push_back(r);
            } else if (const auto* r = std::get_if<RecRoundEntered>(&rec)) {
                entered.push_back(r);
            }
        }
    }

    bool nonfaulty(NodeId id) const { return !meta.is_faulty(id); }

    const TraceMeta& meta;
    std::vector<const RecCommitted*> commits;
    std::vector<const RecVoted*> votes;
    std::vector<const RecProposed*> proposals;
    std::map<int, const RecProposed*> by_pid;
    std::vector<const RecMsgSent*> sent;
    std::map<int, const RecMsgSent*> sent_by_mid;
    std::vector<const RecMsgDelivered*> delivered;
    std::vector<const RecTimerFired*> fired;
    std::vector<const RecTimerArmed*> armed;
    std::vector<const RecRoundEntered*> entered;
};

template <typename R>
std::string w(const R& rec) {
    return serialize_record(TraceRecord{rec});
}

CheckResult pass(std::string name, std::string detail) {
    return CheckResult{std::move(name), CheckStatus::Pass, std::move(detail),
                       {}};
}

CheckResult fail(std::string name, std::string detail,
                 std::vector<std::string> witness) {
    return CheckResult{std::move(name), CheckStatus::Fail, std::move(detail),
                       std::move(witness)};
}

CheckResult not_applicable(std::string name, std::string detail) {
    return CheckResult{std::move(name), CheckStatus::NotApplicable,
                       std::move(detail),
                       {}};
}

CheckResult inconclusive(std::string name, std::string detail) {
    return CheckResult{std::move(name), CheckStatus::Inconclusive,
                       std::move(detail),
                       {}};
}

bool fabricating_leader_possible(const TraceMeta& m) {
    for (const auto& [id, strat] : m.faulty) {
        if (strat.rfind("fabricated_lockset", 0) == 0) {
            return true;
        }
    }
    return false;
}

// First non-stale vote-timer fire per (node, round), by exact time.
std::set<std::tuple<NodeId, Round, Tick>> vote_timeout_points(
    const Index& idx) {
    std::set<std::tuple<NodeId, Round, Tick>> out;
    for (const auto* f : idx.fired) {
        if (f->kind == TimerKind::Vote && !f->stale) {
            out.insert({f->node, f->round, f->t});
        }
    }
    return out;
}

// Non-faulty vote values by (node, round); first vote wins on duplicates.
std::map<std::pair<NodeId, Round>, Value> vote_values(const Index& idx) {
    std::map<std::pair<NodeId, Round>, Value> out;
    for (const auto* v : idx.votes) {
        out.emplace(std::make_pair(v->node, v->round), v->value);
    }
    return out;
}

} // namespace

std::string check_status_name(CheckStatus s) {
    switch (s) {
    case CheckStatus::Pass:
        return "pass";
    case CheckStatus::Fail:
        return "fail";
    case CheckStatus::NotApplicable:
        return "not_applicable";
    case CheckStatus::Inconclusive:
        return "inconclusive";
    }
    return "pass";
}

const CheckResult* Verdict::find(const std::string& check_name) const {
    for (const auto& c : checks) {
        if (c.name == check_name) {
            return &c;
        }
    }
    return nullptr;
}

bool Verdict::any_fail() const {
    return std::any_of(checks.begin(), checks.end(), [](const CheckResult& c) {
        return c.status == CheckStatus::Fail;
    });
}

bool Verdict::any_inconclusive() const {
    return std::any_of(checks.begin(), checks.end(), [](const CheckResult& c) {
        return c.status == CheckStatus::Inconclusive;
    });
}

CheckResult check_agreement(const Trace& tr) {
    Index idx(tr);
    const RecCommitted* first = nullptr;
    for (const auto* c : idx.commits) {
        if (first == nullptr) {
            first = c;
        } else if (c->value != first->value) {
            std::ostringstream d;
            d << "node " << first->node << " committed "
              << first->value.token() << " in round " << first->round
              << " but node " << c->node << " committed " << c->value.token()
              << " in round " << c->round;
            return fail("agreement", d.str(), {w(*first), w(*c)});
        }
    }
    if (first == nullptr) {
        return pass("agreement", "no non-faulty commits");
    }
    std::ostringstream d;
    d << idx.commits.size() << " commits, all " << first->value.token();
    return pass("agreement", d.str());
}

CheckResult check_lock_in(const Trace& tr) {
    Index idx(tr);
    if (idx.commits.empty()) {
        return pass("lock_in", "no non-faulty commits");
    }
    Round rstar = idx.commits.front()->round;
    for (const auto* c : idx.commits) {
        rstar = std::min(rstar, c->round);
    }
    const RecCommitted* anchor = nullptr;
    for (const auto* c : idx.commits) {
        if (c->round == rstar) {
            anchor = c;
            break;
        }
    }
    const Value& b = anchor->value;

    for (const auto* c : idx.commits) {
        if (c->round > rstar && c->value != b) {
            std::ostringstream d;
            d << "value " << b.token() << " locked in round " << rstar
              << " but node " << c->node << " committed " << c->value.token()
              << " in round " << c->round;
            return fail("lock_in", d.str(), {w(*anchor), w(*c)});
        }
    }

    // The committing quorum's non-faulty members must keep voting b.
    std::set<NodeId> locked_voters;
    for (const auto* v : idx.votes) {
        if (v->round == rstar && v->value == b) {
            locked_voters.insert(v->node);
        }
    }
    for (const auto* v : idx.votes) {
        if (v->round > rstar && locked_voters.count(v->node) != 0 &&
            v->value != b) {
            std::ostringstream d;
            d << "node " << v->node << " voted " << b.token() << " in round "
              << rstar << " (committed there) but voted "
              << v->value.token() << " in round " << v->round;
            return fail("lock_in", d.str(), {w(*anchor), w(*v)});
        }
    }

    std::ostringstream d;
    d << "locked " << b.token() << " at round " << rstar << ", "
      << locked_voters.size() << " pinned voters";
    return pass("lock_in", d.str());
}

std::pair<CheckResult, CheckResult> check_validity(const Trace& tr) {
    Index idx(tr);
    std::set<Value> initials(tr.meta.initials.begin(),
                             tr.meta.initials.end());
    std::set<Value> proposed;
    for (const auto* p : idx.proposals) {
        proposed.insert(p->value);
    }

    CheckResult strict = pass("validity_strict", "all committed values are"
                                                 " initial values");
    for (const auto* c : idx.commits) {
        if (initials.count(c->value) == 0) {
            std::ostringstream d;
            d << "node " << c->node << " committed " << c->value.token()
              << ", which is no node's initial value";
            if (fabricating_leader_possible(tr.meta)) {
                d << " (expected: a fabricating leader can inject values,"
                     " strict validity is not promised here)";
                strict = not_applicable("validity_strict", d.str());
            } else {
                strict = fail("validity_strict", d.str(), {w(*c)});
            }
            break;
        }
    }
    if (idx.commits.empty()) {
        strict.detail = "no non-faulty commits";
    }

    CheckResult weak = pass("validity_weak",
                            "all committed values were proposed");
    for (const auto* c : idx.commits) {
        if (proposed.count(c->value) == 0) {
            std::ostringstream d;
            d << "node " << c->node << " committed " << c->value.token()
              << ", which no proposal carried";
            weak = fail("validity_weak", d.str(), {w(*c)});
            break;
        }
    }
    if (idx.commits.empty()) {
        weak.detail = "no non-faulty commits";
    }
    return {std::move(strict), std::move(weak)};
}

CheckResult check_two_step(const Trace& tr) {
    const TraceMeta& m = tr.meta;
    if (!m.fault_free() || m.gst > 0) {
        return not_applicable(
            "two_step", "requires a fault-free run with no turbulence");
    }

    struct PerNode {
        bool committed = false;
        Round commit_round = 0;
        Tick commit_time = 0;
        bool timer_before_commit = false;
        const RecTimerFired* early_fire = nullptr;
        const RecCommitted* commit_rec = nullptr;
        std::vector<const RecVoted*> round1_votes;
        std::optional<Tick> first_proposal_delivery;
        std::set<Tick> vote_delivery_times;
    };
    std::vector<PerNode> nodes(m.n());

    // One ordered pass: "before" means before in trace order.
    for (const auto& rec : tr.records) {
        if (const auto* r = std::get_if<RecTimerFired>(&rec)) {
            PerNode& pn = nodes[r->node];
            if (!pn.committed && pn.early_fire == nullptr) {
                pn.early_fire = r;
            }
        } else if (const auto* r = std::get_if<RecCommitted>(&rec)) {
            PerNode& pn = nodes[r->node];
            pn.committed = true;
            pn.commit_round = r->round;
            pn.commit_time = r->t;
            pn.commit_rec = r;
            pn.timer_before_commit = pn.early_fire != nullptr;
        } else if (const auto* r = std::get_if<RecVoted>(&rec)) {
            if (r->round == 1) {
                nodes[r->node].round1_votes.push_back(r);
            }
        } else if (const auto* r = std::get_if<RecMsgDelivered>(&rec)) {
            PerNode& pn = nodes[r->to];
            if (r->kind == MsgKind::Proposal && !pn.first_proposal_delivery) {
                pn.first_proposal_delivery = r->t;
            }
            if (r->kind == MsgKind::Vote) {
                pn.vote_delivery_times.insert(r->t);
            }
        }
    }

    Tick max_commit = 0;
    for (NodeId i = 0; i < m.n(); ++i) {
        const PerNode& pn = nodes[i];
        std::ostringstream d;
        if (!pn.committed || pn.commit_round != 1) {
            d << "node " << i
              << (pn.committed ? " committed in round " +
                                     std::to_string(pn.commit_round)
                               : " never committed");
            return fail("two_step", d.str(), {w(RecRoundEntered{0, i, 1})});
        }
        if (pn.timer_before_commit) {
            d << "node " << i << " saw a timer fire before its commit";
            return fail("two_step", d.str(), {w(*pn.early_fire)});
        }
        if (pn.round1_votes.size() != 1) {
            d << "node " << i << " cast " << pn.round1_votes.size()
              << " round-1 votes";
            std::vector<std::string> wit;
            for (const auto* v : pn.round1_votes) {
                wit.push_back(w(*v));
            }
            if (wit.empty()) {
                wit.push_back(w(RecRoundEntered{0, i, 1}));
            }
            return fail("two_step", d.str(), std::move(wit));
        }
        if (!pn.first_proposal_delivery ||
            pn.round1_votes[0]->t != *pn.first_proposal_delivery) {
            d << "node " << i
              << " did not vote immediately on the round-1 proposal";
            return fail("two_step", d.str(), {w(*pn.round1_votes[0])});
        }
        if (pn.vote_delivery_times.count(pn.commit_time) == 0) {
            d << "node " << i
              << " commit time does not coincide with a vote delivery";
            return fail("two_step", d.str(), {w(*pn.commit_rec)});
        }
        max_commit = std::max(max_commit, pn.commit_time);
    }
    std::ostringstream d;
    d << "all nodes committed in round 1 by t=" << max_commit
      << ": proposal delivery, then vote exchange";
    return pass("two_step", d.str());
}

CheckResult check_liveness(const Trace& tr) {
    Index idx(tr);
    const TraceMeta& m = tr.meta;
    Config cfg = m.config();

    std::set<NodeId> committed_ids;
    Round max_round = 0;
    for (const auto* c : idx.commits) {
        committed_ids.insert(c->node);
        max_round = std::max(max_round, c->round);
    }
    bool all_committed = true;
    NodeId first_uncommitted = -1;
    for (NodeId i = 0; i < m.n(); ++i) {
        if (idx.nonfaulty(i) && committed_ids.count(i) == 0) {
            all_committed = false;
            first_uncommitted = i;
            break;
        }
    }

    auto last_entered = [&](NodeId id) -> std::string {
        const RecRoundEntered* last = nullptr;
        for (const auto* e : idx.entered) {
            if (e->node == id) {
                last = e;
            }
        }
        return last != nullptr ? w(*last) : w(RecRoundEntered{0, id, 1});
    };

    auto r_ok = first_adequate_round(cfg, m.gst, m.delta);
    if (!r_ok) {
        if (all_committed) {
            return pass("liveness",
                        "all nodes committed although no round is provably"
                        " adequate for gst/delta");
        }
        if (!cfg.doubling_enabled()) {
            return fail("liveness",
                        "timeouts never become adequate for delta=" +
                            std::to_string(m.delta) +
                            " because doubling is disabled",
                        {last_entered(first_uncommitted)});
        }
        return inconclusive("liveness",
                            "no adequate round within representable range");
    }

    Round deadline = *r_ok + m.f + 2;
    for (const auto* c : idx.commits) {
        if (c->round > deadline) {
            std::ostringstream d;
            d << "node " << c->node << " committed in round " << c->round
              << " after the deadline round " << deadline
              << " (r_ok=" << *r_ok << ", f=" << m.f << ")";
            return fail("liveness", d.str(), {w(*c)});
        }
    }

    if (!all_committed) {
        bool overflow = deadline + 1 > 40;
        Tick need = overflow ? 0 : round_entry_time(cfg, deadline + 1);
        if (overflow || tr.end_time < need) {
            std::ostringstream d;
            d << "horizon too short: run ended at t=" << tr.end_time
              << " before the deadline round " << deadline
              << " completes at t=" << need;
            return inconclusive("liveness", d.str());
        }
        std::ostringstream d;
        d << "node " << first_uncommitted
          << " never committed although the deadline round " << deadline
          << " completed at t=" << need;
        return fail("liveness", d.str(), {last_entered(first_uncommitted)});
    }

    std::ostringstream d;
    d << "all commits within deadline: r_ok=" << *r_ok
      << " deadline=" << deadline << " max commit round=" << max_round;
    return pass("liveness", d.str());
}

namespace {

CheckResult inv_vote_once(const Index& idx) {
    std::map<std::pair<NodeId, Round>, const RecVoted*> seen;
    for (const auto* v : idx.votes) {
        auto [it, fresh] = seen.emplace(std::make_pair(v->node, v->round), v);
        if (!fresh) {
            std::ostringstream d;
            d << "node " << v->node << " voted twice in round " << v->round;
            return fail("inv_vote_once", d.str(), {w(*it->second), w(*v)});
        }
    }
    return pass("inv_vote_once",
                std::to_string(idx.votes.size()) + " votes, one per round");
}

CheckResult inv_vote_provenance(const Index& idx) {
    auto timeout_points = vote_timeout_points(idx);
    auto values = vote_values(idx);

    for (const auto* v : idx.votes) {
        bool from_proposal = false;
        for (const auto* d : idx.delivered) {
            if (d->kind == MsgKind::Proposal && d->to == v->node &&
                d->round == v->round && d->t <= v->t) {
                auto it = idx.by_pid.find(d->pid);
                if (it != idx.by_pid.end() &&
                    it->second->value == v->value) {
                    from_proposal = true;
                    break;
                }
            }
        }
        if (from_proposal) {
            continue;
        }
        if (timeout_points.count({v->node, v->round, v->t}) != 0) {
            if (v->round == 1 && v->value.is_empty()) {
                continue;
            }
            if (v->round > 1) {
                auto prev = values.find({v->node, v->round - 1});
                if (prev != values.end() && prev->second == v->value) {
                    continue;
                }
            }
        }
        std::ostringstream d;
        d << "vote by node " << v->node << " in round " << v->round
          << " matches no delivered proposal and no timeout rule";
        return fail("inv_vote_provenance", d.str(), {w(*v)});
    }
    return pass("inv_vote_provenance",
                std::to_string(idx.votes.size()) + " votes traced");
}

CheckResult inv_commit_quorum(const Index& idx) {
    int quorum = 4 * idx.meta.f + 1;
    for (const auto* c : idx.commits) {
        if (c->value.is_empty()) {
            return fail("inv_commit_quorum",
                        "commit of the empty value by node " +
                            std::to_string(c->node),
                        {w(*c)});
        }
        std::set<NodeId> sup;
        for (const auto* d : idx.delivered) {
            if (d->kind == MsgKind::Vote && d->to == c->node &&
                d->round == c->round && d->value == c->value &&
                d->t <= c->t) {
                sup.insert(d->from);
            }
        }
        for (const auto* v : idx.votes) {
            if (v->node == c->node && v->round == c->round &&
                v->value == c->value && v->t <= c->t) {
                sup.insert(c->node);
            }
        }
        if (static_cast<int>(sup.size()) < quorum) {
            std::ostringstream d;
            d << "commit by node " << c->node << " in round " << c->round
              << " backed by only " << sup.size() << " of " << quorum
              << " required votes";
            return fail("inv_commit_quorum", d.str(), {w(*c)});
        }
    }
    return pass("inv_commit_quorum",
                std::to_string(idx.commits.size()) + " commits justified");
}

CheckResult inv_proposal_constraint(const Index& idx) {
    // The oracle judges with the unmutated thresholds, no matter what
    // mutation the run itself was configured with.
    Config unmutated_cfg{idx.meta.f, idx.meta.to_vote_base,
                         idx.meta.to_commit_base, Mutation::None};
    auto timeout_points = vote_timeout_points(idx);
    auto values = vote_values(idx);

    for (const auto* v : idx.votes) {
        if (v->round <= 1) {
            continue;
        }
        std::vector<const RecProposed*> candidates;
        for (const auto* d : idx.delivered) {
            if (d->kind == MsgKind::Proposal && d->to == v->node &&
                d->round == v->round && d->t <= v->t) {
                auto it = idx.by_pid.find(d->pid);
                if (it != idx.by_pid.end() &&
                    it->second->value == v->value) {
                    candidates.push_back(it->second);
                }
            }
        }
        if (candidates.empty()) {
            continue; // timeout vote
        }
        if (timeout_points.count({v->node, v->round, v->t}) != 0) {
            auto prev = values.find({v->node, v->round - 1});
            if (prev != values.end() && prev->second == v->value) {
                continue; // could equally be a timeout re-vote
            }
        }
        bool ok = false;
        for (const auto* p : candidates) {
            if (!is_valid_lockset(p->justification, v->round - 1,
                                  unmutated_cfg)) {
                continue;
            }
            if (best_supported(p->justification, unmutated_cfg.quorum_lo())
                    .has_value() &&
                support_in(p->justification, p->value) <
                    unmutated_cfg.quorum_lo()) {
                continue;
            }
            ok = true;
            break;
        }
        if (!ok) {
            std::ostringstream d;
            d << "node " << v->node << " accepted a round-" << v->round
              << " proposal violating the lockset rules";
            return fail("inv_proposal_constraint", d.str(),
                        {w(*v), w(*candidates.front())});
        }
    }
    return pass("inv_proposal_constraint", "accepted proposals all justified");
}

CheckResult inv_timer_doubling(const Index& idx) {
    std::map<std::pair<NodeId, Round>, std::pair<Tick, Tick>> pairs;
    for (const auto* a : idx.armed) {
        if (!idx.nonfaulty(a->node)) {
            continue;
        }
        Tick base = a->kind == TimerKind::Vote ? idx.meta.to_vote_base
                                               : idx.meta.to_commit_base;
        if (a->round < 1 || a->round - 1 > 60) {
            return fail("inv_timer_doubling", "timer round out of range",
                        {w(*a)});
        }
        Tick expected = base << (a->round - 1);
        if (a->duration != expected) {
            std::ostringstream d;
            d << "node " << a->node << " armed a round-" << a->round
              << (a->kind == TimerKind::Vote ? " vote" : " commit")
              << " timer of " << a->duration << " ticks, expected "
              << expected;
            return fail("inv_timer_doubling", d.str(), {w(*a)});
        }
        auto& p = pairs[{a->node, a->round}];
        (a->kind == TimerKind::Vote ? p.first : p.second) = a->duration;
    }
    for (const auto& [key, durs] : pairs) {
        if (durs.first > 0 && durs.second > 0 && durs.first >= durs.second) {
            std::ostringstream d;
            d << "node " << key.first << " round " << key.second
              << ": vote timeout " << durs.first
              << " not below commit timeout " << durs.second;
            return fail("inv_timer_doubling", d.str(),
                        {w(RecTimerArmed{0, key.first, TimerKind::Vote,
                                         key.second, durs.first})});
        }
    }
    return pass("inv_timer_doubling",
                std::to_string(idx.armed.size()) + " timers on schedule");
}

CheckResult inv_conservation(const Index& idx, const Trace& tr) {
    std::set<int> seen_mids;
    for (const auto* d : idx.delivered) {
        auto it = idx.sent_by_mid.find(d->mid);
        if (it == idx.sent_by_mid.end()) {
            return fail("inv_conservation",
                        "delivery without a matching send",
                        {w(*d)});
        }
        if (!seen_mids.insert(d->mid).second) {
            return fail("inv_conservation", "message delivered twice",
                        {w(*d)});
        }
        if (d->t != it->second->eta) {
            return fail("inv_conservation",
                        "delivery time disagrees with scheduled eta",
                        {w(*it->second), w(*d)});
        }
    }
    for (const auto* s : idx.sent) {
        if (seen_mids.count(s->mid) == 0 && s->eta < tr.end_time) {
            return fail("inv_conservation",
                        "message lost although due before the run ended",
                        {w(*s)});
        }
    }
    std::ostringstream d;
    d << idx.sent.size() << " sends, " << idx.delivered.size()
      << " deliveries, rest due after t=" << tr.end_time;
    return pass("inv_conservation", d.str());
}

CheckResult inv_delay_bound(const Index& idx) {
    for (const auto* s : idx.sent) {
        if (s->t >= idx.meta.gst && idx.nonfaulty(s->from) &&
            idx.nonfaulty(s->to) && s->eta - s->t > idx.meta.delta) {
            std::ostringstream d;
            d << "message sent at t=" << s->t << " (at/after gst="
              << idx.meta.gst << ") delivered after delta="
              << idx.meta.delta;
            return fail("inv_delay_bound", d.str(), {w(*s)});
        }
    }
    return pass("inv_delay_bound", "post-stabilization delays within delta");
}

} // namespace

std::vector<CheckResult> check_invariants(const Trace& tr) {
    Index idx(tr);
    std::vector<CheckResult> out;
    out.push_back(inv_vote_once(idx));
    out.push_back(inv_vote_provenance(idx));
    out.push_back(inv_commit_quorum(idx));
    out.push_back(inv_proposal_constraint(idx));
    out.push_back(inv_timer_doubling(idx));
    out.push_back(inv_conservation(idx, tr));
    out.push_back(inv_delay_bound(idx));
    return out;
}

Verdict verify(const Trace& tr) {
    Verdict v;
    v.name = tr.meta.name;
    v.seed = tr.meta.seed;

    std::vector<std::string> requested = tr.meta.checks;
    if (requested.empty()) {
        requested = all_check_names();
    }
    std::set<std::string> req(requested.begin(), requested.end());

    if (req.count("agreement")) {
        v.checks.push_back(check_agreement(tr));
    }
    if (req.count("lock_in")) {
        v.checks.push_back(check_lock_in(tr));
    }
    if (req.count("validity")) {
        auto [strict, weak] = check_validity(tr);
        v.checks.push_back(std::move(strict));
        v.checks.push_back(std::move(weak));
    }
    if (req.count("two_step")) {
        v.checks.push_back(check_two_step(tr));
    }
    if (req.count("liveness")) {
        v.checks.push_back(check_liveness(tr));
    }
    if (req.count("invariants")) {
        for (auto& c : check_invariants(tr)) {
            v.checks.push_back(std::move(c));
        }
    }

    for (const auto& rec : tr.records) {
        if (const auto* c = std::get_if<RecCommitted>(&rec)) {
            if (!tr.meta.is_faulty(c->node) &&
                v.commit_round.count(c->node) == 0) {
                v.commit_round[c->node] = c->round;
                v.commit_time[c->node] = c->t;
            }
        } else if (std::holds_alternative<RecMsgSent>(rec)) {
            ++v.messages_sent;
        }
    }
    return v;
}

std::string render_verdict(const Verdict& v) {
    std::ostringstream out;
    out << "tsbft-verdict v1\n";
    out << "name=" << v.name << " seed=" << v.seed << "\n";
    for (const auto& c : v.checks) {
        out << "check " << c.name << " status=" << check_status_name(c.status);
        if (!c.detail.empty()) {
            out << " detail=" << c.detail;
        }
        out << "\n";
        for (const auto& wline : c.witness) {
            out << "witness " << wline << "\n";
        }
    }
    for (const auto& [node, round] : v.commit_round) {
        out << "metric node=" << node << " commit_round=" << round
            << " commit_time=" << v.commit_time.at(node) << "\n";
    }
    out << "metric messages_sent=" << v.messages_sent << "\n";
    out << "overall="
        << (v.any_fail() ? "fail"
                         : (v.any_inconclusive() ? "inconclusive" : "pass"))
        << "\n";
    return out.str();
}

} // namespace tsbft
