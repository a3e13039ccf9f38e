// Copyright 2026 the tsbft authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file or http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "tsbft/messages.hpp"
#include "tsbft/node.hpp"

namespace tsbft {

enum class MsgKind { Proposal, Vote };

// Trace records. One line each in the serialized form; together they are
// sufficient to re-derive every non-faulty node's state (replay).
struct RecRoundEntered {
    Tick t = 0;
    NodeId node = 0;
    Round round = 0;
};

struct RecTimerArmed {
    Tick t = 0;
    NodeId node = 0;
    TimerKind kind = TimerKind::Vote;
    Round round = 0;
    Tick duration = 0;
};

struct RecTimerFired {
    Tick t = 0;
    NodeId node = 0;
    TimerKind kind = TimerKind::Vote;
    Round round = 0;
    bool stale = false;
};

// One distinct proposal content that was actually broadcast. Messages
// reference it by pid so the justification is stored once.
struct RecProposed {
    Tick t = 0;
    NodeId node = 0;
    Round round = 0;
    Value value;
    int pid = 0;
    std::vector<VoteMessage> justification;
};

struct RecMsgSent {
    Tick t = 0;
    int mid = 0;
    MsgKind kind = MsgKind::Vote;
    NodeId from = 0;
    NodeId to = 0;
    Tick eta = 0;
    Round round = 0;
    Value value; // vote value; for proposals the value is on the pid record
    int pid = 0; // proposals only
};

struct RecMsgDelivered {
    Tick t = 0;
    int mid = 0;
    MsgKind kind = MsgKind::Vote;
    NodeId from = 0;
    NodeId to = 0;
    Round round = 0;
    Value value;
    int pid = 0;
};

struct RecVoted {
    Tick t = 0;
    NodeId node = 0;
    Round round = 0;
    Value value;
};

struct RecCommitted {
    Tick t = 0;
    NodeId node = 0;
    Round round = 0;
    Value value;
};

using TraceRecord =
    std::variant<RecRoundEntered, RecTimerArmed, RecTimerFired, RecProposed,
                 RecMsgSent, RecMsgDelivered, RecVoted, RecCommitted>;

Tick record_time(const TraceRecord& r);

// Everything the verifier and replayer need to know about the run setup.
struct TraceMeta {
    std::string name = "scenario";
    int f = 1;
    Tick to_vote_base = 10;
    Tick to_commit_base = 30;
    Mutation mutation = Mutation::None;
    Tick gst = 0;
    Tick delta = 1;
    uint64_t seed = 0;
    Tick horizon_ticks = 0;
    int64_t horizon_events = 0;
    std::vector<Value> initials;                    // size n
    std::map<NodeId, std::string> faulty;           // id -> strategy text
    std::vector<std::string> checks;                // oracle names to apply

    int n() const { return 5 * f + 1; }
    Config config() const {
        return Config{f, to_vote_base, to_commit_base, mutation};
    }
    bool is_faulty(NodeId id) const { return faulty.count(id) != 0; }
    bool fault_free() const { return faulty.empty(); }
};

struct Trace {
    TraceMeta meta;
    std::vector<TraceRecord> records;
    Tick end_time = 0;
    std::string end_reason; // all_committed | horizon_ticks | horizon_events
    int64_t events = 0;
};

std::string serialize_record(const TraceRecord& r);
std::string serialize_trace(const Trace& tr);

// Parses the serialized form back; throws TraceError on malformed input.
class TraceError : public std::runtime_error {
public:
    TraceError(int line, const std::string& msg)
        : std::runtime_error("trace line " + std::to_string(line) + ": " +
                             msg),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

Trace parse_trace(const std::string& text);

} // namespace tsbft
