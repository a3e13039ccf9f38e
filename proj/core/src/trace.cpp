// Copyright 2026 the tsbft authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file or http://www.apache.org/licenses/LICENSE-2.0

#include "tsbft/trace.hpp"

#include <charconv>
#include <sstream>

namespace tsbft {

namespace {

const char* kHeader = "tsbft-trace v1";

std::string kind_name(MsgKind k) {
    return k == MsgKind::Proposal ? "proposal" : "vote";
}

std::string timer_name(TimerKind k) {
    return k == TimerKind::Vote ? "vote" : "commit";
}

std::string render_justification(const std::vector<VoteMessage>& just) {
    std::string out;
    for (size_t i = 0; i < just.size(); ++i) {
        if (i > 0) {
            out.push_back(',');
        }
        out += std::to_string(just[i].sender);
        out.push_back(':');
        out += just[i].value.token();
    }
    return out;
}

struct FieldMap {
    int line;
    std::map<std::string, std::string, std::less<>> fields;

    const std::string& get(std::string_view key) const {
        auto it = fields.find(key);
        if (it == fields.end()) {
            throw TraceError(line, "missing field " + std::string(key));
        }
        return it->second;
    }

    bool has(std::string_view key) const { return fields.count(key) != 0; }

    int64_t get_int(std::string_view key) const {
        const std::string& s = get(key);
        int64_t v = 0;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || p != s.data() + s.size()) {
            throw TraceError(line, "bad integer in " + std::string(key));
        }
        return v;
    }

    uint64_t get_uint(std::string_view key) const {
        const std::string& s = get(key);
        uint64_t v = 0;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || p != s.data() + s.size()) {
            throw TraceError(line, "bad integer in " + std::string(key));
        }
        return v;
    }

    Value get_value(std::string_view key) const {
        auto v = Value::from_token(get(key));
        if (!v) {
            throw TraceError(line, "bad value token in " + std::string(key));
        }
        return *v;
    }

    MsgKind get_msg_kind() const {
        const std::string& s = get("kind");
        if (s == "proposal") return MsgKind::Proposal;
        if (s == "vote") return MsgKind::Vote;
        throw TraceError(line, "bad message kind " + s);
    }

    TimerKind get_timer_kind() const {
        const std::string& s = get("kind");
        if (s == "vote") return TimerKind::Vote;
        if (s == "commit") return TimerKind::Commit;
        throw TraceError(line, "bad timer kind " + s);
    }
};

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) {
        out.push_back(tok);
    }
    return out;
}

FieldMap parse_fields(const std::vector<std::string>& toks, size_t from,
                      int line) {
    FieldMap fm{line, {}};
    for (size_t i = from; i < toks.size(); ++i) {
        auto eq = toks[i].find('=');
        if (eq == std::string::npos) {
            throw TraceError(line, "expected key=value, got " + toks[i]);
        }
        fm.fields[toks[i].substr(0, eq)] = toks[i].substr(eq + 1);
    }
    return fm;
}

std::vector<VoteMessage> parse_justification(const std::string& s, Round round,
                                             int line) {
    std::vector<VoteMessage> out;
    if (s.empty()) {
        return out;
    }
    size_t pos = 0;
    while (pos <= s.size()) {
        size_t comma = s.find(',', pos);
        std::string item = s.substr(
            pos, comma == std::string::npos ? std::string::npos : comma - pos);
        size_t colon = item.find(':');
        if (colon == std::string::npos) {
            throw TraceError(line, "bad justification entry " + item);
        }
        int sender = 0;
        auto [p, ec] = std::from_chars(item.data(), item.data() + colon, sender);
        if (ec != std::errc{} || p != item.data() + colon) {
            throw TraceError(line, "bad justification sender in " + item);
        }
        auto val = Value::from_token(item.substr(colon + 1));
        if (!val) {
            throw TraceError(line, "bad justification value in " + item);
        }
        out.push_back(VoteMessage{round, sender, *val});
        if (comma == std::string::npos) {
            break;
        }
        pos = comma + 1;
    }
    return out;
}

struct RecordTimeVisitor {
    template <typename R>
    Tick operator()(const R& r) const {
        return r.t;
    }
};

} // namespace

Tick record_time(const TraceRecord& r) {
    return std::visit(RecordTimeVisitor{}, r);
}

std::string serialize_record(const TraceRecord& rec) {
    std::ostringstream out;
    if (const auto* r = std::get_if<RecRoundEntered>(&rec)) {
        out << "round_entered t=" << r->t << " node=" << r->node
            << " round=" << r->round;
    } else if (const auto* r = std::get_if<RecTimerArmed>(&rec)) {
        out << "timer_armed t=" << r->t << " node=" << r->node
            << " kind=" << timer_name(r->kind) << " round=" << r->round
            << " dur=" << r->duration;
    } else if (const auto* r = std::get_if<RecTimerFired>(&rec)) {
        out << "timer_fired t=" << r->t << " node=" << r->node
            << " kind=" << timer_name(r->kind) << " round=" << r->round
            << " stale=" << (r->stale ? 1 : 0);
    } else if (const auto* r = std::get_if<RecProposed>(&rec)) {
        out << "proposed t=" << r->t << " node=" << r->node
            << " round=" << r->round << " value=" << r->value.token()
            << " pid=" << r->pid
            << " just=" << render_justification(r->justification);
    } else if (const auto* r = std::get_if<RecMsgSent>(&rec)) {
        out << "msg_sent t=" << r->t << " mid=" << r->mid
            << " kind=" << kind_name(r->kind) << " from=" << r->from
            << " to=" << r->to << " eta=" << r->eta << " round=" << r->round;
        if (r->kind == MsgKind::Vote) {
            out << " value=" << r->value.token();
        } else {
            out << " pid=" << r->pid;
        }
    } else if (const auto* r = std::get_if<RecMsgDelivered>(&rec)) {
        out << "msg_delivered t=" << r->t << " mid=" << r->mid
            << " kind=" << kind_name(r->kind) << " from=" << r->from
            << " to=" << r->to << " round=" << r->round;
        if (r->kind == MsgKind::Vote) {
            out << " value=" << r->value.token();
        } else {
            out << " pid=" << r->pid;
        }
    } else if (const auto* r = std::get_if<RecVoted>(&rec)) {
        out << "voted t=" << r->t << " node=" << r->node
            << " round=" << r->round << " value=" << r->value.token();
    } else if (const auto* r = std::get_if<RecCommitted>(&rec)) {
        out << "committed t=" << r->t << " node=" << r->node
            << " round=" << r->round << " value=" << r->value.token();
    }
    return out.str();
}

std::string serialize_trace(const Trace& tr) {
    std::ostringstream out;
    out << kHeader << "\n";
    const TraceMeta& m = tr.meta;
    out << "meta name=" << m.name << " f=" << m.f
        << " to_vote=" << m.to_vote_base << " to_commit=" << m.to_commit_base
        << " mutation=" << mutation_name(m.mutation) << " gst=" << m.gst
        << " delta=" << m.delta << " seed=" << m.seed
        << " horizon_ticks=" << m.horizon_ticks
        << " horizon_events=" << m.horizon_events << "\n";
    out << "meta initials";
    for (size_t i = 0; i < m.initials.size(); ++i) {
        out << " " << i << "=" << m.initials[i].token();
    }
    out << "\n";
    if (!m.faulty.empty()) {
        out << "meta faulty";
        for (const auto& [id, strat] : m.faulty) {
            out << " " << id << "=" << strat;
        }
        out << "\n";
    }
    out << "meta checks";
    for (const auto& c : m.checks) {
        out << " " << c;
    }
    out << "\n";
    for (const auto& rec : tr.records) {
        out << serialize_record(rec) << "\n";
    }
    out << "end t=" << tr.end_time << " reason=" << tr.end_reason
        << " events=" << tr.events << "\n";
    return out.str();
}

Trace parse_trace(const std::string& text) {
    Trace tr;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool saw_header = false;
    bool saw_end = false;
    bool saw_meta = false;

    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) {
            continue;
        }
        if (!saw_header) {
            if (line != kHeader) {
                throw TraceError(lineno, "missing trace header");
            }
            saw_header = true;
            continue;
        }
        auto toks = split_ws(line);
        if (toks.empty()) {
            continue;
        }
        const std::string& kind = toks[0];
        if (kind == "meta") {
            if (toks.size() < 2) {
                throw TraceError(lineno, "empty meta line");
            }
            if (toks[1] == "initials") {
                auto fm = parse_fields(toks, 2, lineno);
                tr.meta.initials.assign(fm.fields.size(), Value{});
                for (const auto& [k, v] : fm.fields) {
                    int idx = 0;
                    auto [p, ec] =
                        std::from_chars(k.data(), k.data() + k.size(), idx);
                    if (ec != std::errc{} || idx < 0 ||
                        idx >= static_cast<int>(tr.meta.initials.size())) {
                        throw TraceError(lineno, "bad initials index " + k);
                    }
                    auto val = Value::from_token(v);
                    if (!val) {
                        throw TraceError(lineno, "bad initial value " + v);
                    }
                    tr.meta.initials[idx] = *val;
                }
            } else if (toks[1] == "faulty") {
                auto fm = parse_fields(toks, 2, lineno);
                for (const auto& [k, v] : fm.fields) {
                    int id = 0;
                    auto [p, ec] =
                        std::from_chars(k.data(), k.data() + k.size(), id);
                    if (ec != std::errc{}) {
                        throw TraceError(lineno, "bad faulty id " + k);
                    }
                    tr.meta.faulty[id] = v;
                }
            } else if (toks[1] == "checks") {
                tr.meta.checks.assign(toks.begin() + 2, toks.end());
            } else {
                auto fm = parse_fields(toks, 1, lineno);
                tr.meta.name = fm.get("name");
                tr.meta.f = static_cast<int>(fm.get_int("f"));
                tr.meta.to_vote_base = fm.get_int("to_vote");
                tr.meta.to_commit_base = fm.get_int("to_commit");
                auto mut = mutation_from_name(fm.get("mutation"));
                if (!mut) {
                    throw TraceError(lineno, "bad mutation name");
                }
                tr.meta.mutation = *mut;
                tr.meta.gst = fm.get_int("gst");
                tr.meta.delta = fm.get_int("delta");
                tr.meta.seed = fm.get_uint("seed");
                tr.meta.horizon_ticks = fm.get_int("horizon_ticks");
                tr.meta.horizon_events = fm.get_int("horizon_events");
                saw_meta = true;
            }
            continue;
        }
        if (kind == "end") {
            auto fm = parse_fields(toks, 1, lineno);
            tr.end_time = fm.get_int("t");
            tr.end_reason = fm.get("reason");
            tr.events = fm.get_int("events");
            saw_end = true;
            continue;
        }

        auto fm = parse_fields(toks, 1, lineno);
        if (kind == "round_entered") {
            tr.records.push_back(RecRoundEntered{
                fm.get_int("t"), static_cast<NodeId>(fm.get_int("node")),
                static_cast<Round>(fm.get_int("round"))});
        } else if (kind == "timer_armed") {
            tr.records.push_back(RecTimerArmed{
                fm.get_int("t"), static_cast<NodeId>(fm.get_int("node")),
                fm.get_timer_kind(), static_cast<Round>(fm.get_int("round")),
                fm.get_int("dur")});
        } else if (kind == "timer_fired") {
            tr.records.push_back(RecTimerFired{
                fm.get_int("t"), static_cast<NodeId>(fm.get_int("node")),
                fm.get_timer_kind(), static_cast<Round>(fm.get_int("round")),
                fm.get_int("stale") != 0});
        } else if (kind == "proposed") {
            Round round = static_cast<Round>(fm.get_int("round"));
            std::string just = fm.has("just") ? fm.get("just") : "";
            tr.records.push_back(RecProposed{
                fm.get_int("t"), static_cast<NodeId>(fm.get_int("node")),
                round, fm.get_value("value"),
                static_cast<int>(fm.get_int("pid")),
                parse_justification(just, round - 1, lineno)});
        } else if (kind == "msg_sent") {
            MsgKind mk = fm.get_msg_kind();
            tr.records.push_back(RecMsgSent{
                fm.get_int("t"), static_cast<int>(fm.get_int("mid")), mk,
                static_cast<NodeId>(fm.get_int("from")),
                static_cast<NodeId>(fm.get_int("to")), fm.get_int("eta"),
                static_cast<Round>(fm.get_int("round")),
                mk == MsgKind::Vote ? fm.get_value("value") : Value{},
                mk == MsgKind::Proposal ? static_cast<int>(fm.get_int("pid"))
                                        : 0});
        } else if (kind == "msg_delivered") {
            MsgKind mk = fm.get_msg_kind();
            tr.records.push_back(RecMsgDelivered{
                fm.get_int("t"), static_cast<int>(fm.get_int("mid")), mk,
                static_cast<NodeId>(fm.get_int("from")),
                static_cast<NodeId>(fm.get_int("to")),
                static_cast<Round>(fm.get_int("round")),
                mk == MsgKind::Vote ? fm.get_value("value") : Value{},
                mk == MsgKind::Proposal ? static_cast<int>(fm.get_int("pid"))
                                        : 0});
        } else if (kind == "voted") {
            tr.records.push_back(RecVoted{
                fm.get_int("t"), static_cast<NodeId>(fm.get_int("node")),
                static_cast<Round>(fm.get_int("round")),
                fm.get_value("value")});
        } else if (kind == "committed") {
            tr.records.push_back(RecCommitted{
                fm.get_int("t"), static_cast<NodeId>(fm.get_int("node")),
                static_cast<Round>(fm.get_int("round")),
                fm.get_value("value")});
        } else {
            throw TraceError(lineno, "unknown record kind " + kind);
        }
    }
    if (!saw_header) {
        throw TraceError(1, "missing trace header");
    }
    if (!saw_meta) {
        throw TraceError(lineno, "missing meta line");
    }
    if (!saw_end) {
        throw TraceError(lineno, "missing end line");
    }
    return tr;
}

} // namespace tsbft
