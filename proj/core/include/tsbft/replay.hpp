// Copyright 2026 the tsbft authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file or http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <string>
#include <vector>

#include "tsbft/trace.hpp"

namespace tsbft {

struct ReplayMismatch {
    NodeId node = 0;
    std::string expected; // next recorded effect, or "(no further effects)"
    std::string actual;   // effect the re-driven node produced instead
};

struct ReplayResult {
    bool ok = true;
    int64_t events_replayed = 0;
    std::vector<ReplayMismatch> mismatches;
};

// Re-drives every non-faulty node through the stimuli recorded in the
// trace (deliveries and timer fires, in trace order) and checks that the
// recorded effects — round entries, armed timers, votes, proposals,
// per-recipient sends, commits — come out identically. Faulty nodes are
// driven by strategies, not by the state machine, and are skipped.
ReplayResult replay(const Trace& tr);

} // namespace tsbft
