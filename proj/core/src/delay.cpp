// Copyright 2026 the tsbft authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file or http://www.apache.org/licenses/LICENSE-2.0

#include "tsbft/delay.hpp"

namespace tsbft {

uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

DelayModel::DelayModel(Tick gst, Tick delta, Tick post_gst_delay,
                       uint64_t seed,
                       std::optional<std::pair<Tick, Tick>> pre_gst_random,
                       std::vector<DelayRule> rules)
    : gst_(gst),
      delta_(delta),
      post_gst_delay_(post_gst_delay),
      seed_(seed),
      pre_gst_random_(pre_gst_random),
      rules_(std::move(rules)) {
    if (delta_ < 1) {
        throw std::invalid_argument("delay: delta must be >= 1");
    }
    if (post_gst_delay_ < 1 || post_gst_delay_ > delta_) {
        throw std::invalid_argument(
            "delay: post-gst delay must be in [1, delta]");
    }
    if (pre_gst_random_ &&
        (pre_gst_random_->first < 1 ||
         pre_gst_random_->second < pre_gst_random_->first)) {
        throw std::invalid_argument("delay: bad pre-gst random range");
    }
    for (const auto& r : rules_) {
        if (r.delay < 1) {
            throw std::invalid_argument("delay: rule delay must be >= 1");
        }
    }
}

Tick DelayModel::random_delay(NodeId from, NodeId to, Tick send_time,
                              MsgKind kind, Round round) const {
    uint64_t h = seed_;
    h = splitmix64(h ^ static_cast<uint64_t>(from));
    h = splitmix64(h ^ (static_cast<uint64_t>(to) << 8));
    h = splitmix64(h ^ static_cast<uint64_t>(send_time));
    h = splitmix64(h ^ (static_cast<uint64_t>(round) << 4) ^
                   (kind == MsgKind::Proposal ? 1u : 2u));
    auto [lo, hi] = *pre_gst_random_;
    return lo + static_cast<Tick>(h % static_cast<uint64_t>(hi - lo + 1));
}

Tick DelayModel::delay_for(MsgKind kind, Round round, NodeId from, NodeId to,
                           Tick send_time, bool nonfaulty_pair) const {
    bool pre_gst = send_time < gst_;
    for (const auto& r : rules_) {
        if (!r.matches(kind, round, from, to)) {
            continue;
        }
        if (!pre_gst && !r.always) {
            continue;
        }
        if (!pre_gst && nonfaulty_pair && r.delay > delta_) {
            throw DelayBoundViolation(
                "scripted delay " + std::to_string(r.delay) +
                " exceeds delta " + std::to_string(delta_) +
                " after stabilization on edge " + std::to_string(from) +
                "->" + std::to_string(to));
        }
        return r.delay;
    }
    if (pre_gst && pre_gst_random_) {
        return random_delay(from, to, send_time, kind, round);
    }
    return post_gst_delay_;
}

} // namespace tsbft
