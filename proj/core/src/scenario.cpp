// Copyright 2026 the tsbft authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file or http://www.apache.org/licenses/LICENSE-2.0

#include "tsbft/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace tsbft {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) {
        return "";
    }
    size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) {
        out.push_back(tok);
    }
    return out;
}

int64_t parse_int(const std::string& s, int line, const std::string& what) {
    int64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size()) {
        throw ScenarioError(line, "bad integer for " + what + ": " + s);
    }
    return v;
}

uint64_t parse_uint(const std::string& s, int line, const std::string& what) {
    uint64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size()) {
        throw ScenarioError(line, "bad integer for " + what + ": " + s);
    }
    return v;
}

bool parse_bool(const std::string& s, int line, const std::string& what) {
    if (s == "true" || s == "1") return true;
    if (s == "false" || s == "0") return false;
    throw ScenarioError(line, "bad boolean for " + what + ": " + s);
}

bool token_safe(const std::string& s) {
    if (s.empty()) {
        return false;
    }
    return std::all_of(s.begin(), s.end(), [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
               (c >= '0' && c <= '9') || c == '_' || c == '-' || c == '.';
    });
}

DelayRule parse_delay_rule(const std::string& body, int line) {
    DelayRule rule;
    bool saw_delay = false;
    for (const auto& tok : split_ws(body)) {
        if (tok == "always") {
            rule.always = true;
            continue;
        }
        auto eq = tok.find('=');
        if (eq == std::string::npos) {
            throw ScenarioError(line, "bad delay rule token: " + tok);
        }
        std::string key = tok.substr(0, eq);
        std::string val = tok.substr(eq + 1);
        if (key == "kind") {
            if (val == "vote") {
                rule.kind = MsgKind::Vote;
            } else if (val == "proposal") {
                rule.kind = MsgKind::Proposal;
            } else {
                throw ScenarioError(line, "bad delay rule kind: " + val);
            }
        } else if (key == "round") {
            rule.round = static_cast<Round>(parse_int(val, line, "round"));
        } else if (key == "from") {
            rule.from = static_cast<NodeId>(parse_int(val, line, "from"));
        } else if (key == "to") {
            rule.to = static_cast<NodeId>(parse_int(val, line, "to"));
        } else if (key == "delay") {
            rule.delay = parse_int(val, line, "delay");
            saw_delay = true;
        } else {
            throw ScenarioError(line, "unknown delay rule key: " + key);
        }
    }
    if (!saw_delay) {
        throw ScenarioError(line, "delay rule needs delay=N");
    }
    return rule;
}

std::string render_delay_rule(const DelayRule& r) {
    std::ostringstream out;
    if (r.kind) {
        out << "kind=" << (*r.kind == MsgKind::Vote ? "vote" : "proposal")
            << " ";
    }
    if (r.round) {
        out << "round=" << *r.round << " ";
    }
    if (r.from) {
        out << "from=" << *r.from << " ";
    }
    if (r.to) {
        out << "to=" << *r.to << " ";
    }
    if (r.always) {
        out << "always ";
    }
    out << "delay=" << r.delay;
    return out.str();
}

} // namespace

const std::vector<std::string>& all_check_names() {
    static const std::vector<std::string> names = {
        "agreement", "lock_in",  "validity",
        "two_step",  "liveness", "invariants",
    };
    return names;
}

std::vector<Value> Scenario::resolved_initials() const {
    std::vector<Value> out = initials;
    out.resize(n());
    for (int i = 0; i < n(); ++i) {
        if (out[i].is_empty()) {
            out[i] = Value::of("v" + std::to_string(i));
        }
    }
    return out;
}

Tick Scenario::resolved_horizon() const {
    if (horizon_ticks) {
        return *horizon_ticks;
    }
    Config cfg = config();
    auto r_ok = first_adequate_round(cfg, gst, delta);
    if (!r_ok) {
        throw ScenarioError(
            0, "horizon_ticks required: timeouts never adequate for gst/delta");
    }
    return round_entry_time(cfg, *r_ok + f + 4);
}

DelayModel Scenario::make_delay_model() const {
    return DelayModel{gst,  delta,          effective_post_gst_delay(),
                      seed, pre_gst_random, delay_rules};
}

Scenario Scenario::with_seed(uint64_t s) const {
    Scenario out = *this;
    out.seed = s;
    if (faulty_rotate) {
        AdversarySpec rotated;
        int shift = static_cast<int>(s % static_cast<uint64_t>(n()));
        for (const auto& [id, strat] : adversary.faulty) {
            rotated.faulty[(id + shift) % n()] = strat;
        }
        out.adversary = rotated;
    }
    return out;
}

void Scenario::validate() const {
    if (!token_safe(name)) {
        throw ScenarioError(0, "name must be a plain token");
    }
    if (f < 1 || f > 20) {
        throw ScenarioError(0, "f must be in [1, 20]");
    }
    if (to_vote_base < 1) {
        throw ScenarioError(0, "to_vote_base must be >= 1");
    }
    if (to_commit_base <= to_vote_base) {
        throw ScenarioError(0, "TO_vote < TO_commit required");
    }
    if (gst < 0) {
        throw ScenarioError(0, "gst must be >= 0");
    }
    if (delta < 1) {
        throw ScenarioError(0, "delta must be >= 1");
    }
    if (post_gst_delay && (*post_gst_delay < 1 || *post_gst_delay > delta)) {
        throw ScenarioError(0, "post_gst_delay must be in [1, delta]");
    }
    if (pre_gst_random && (pre_gst_random->first < 1 ||
                           pre_gst_random->second < pre_gst_random->first)) {
        throw ScenarioError(0, "pre_gst_random needs 1 <= lo <= hi");
    }
    if (horizon_ticks && *horizon_ticks < 1) {
        throw ScenarioError(0, "horizon_ticks must be >= 1");
    }
    if (horizon_events < 1) {
        throw ScenarioError(0, "horizon_events must be >= 1");
    }
    if (static_cast<int>(adversary.faulty.size()) > f) {
        throw ScenarioError(0, "fault bound exceeded: " +
                                   std::to_string(adversary.faulty.size()) +
                                   " faulty nodes with f = " +
                                   std::to_string(f));
    }
    for (const auto& [id, strat] : adversary.faulty) {
        if (id < 0 || id >= n()) {
            throw ScenarioError(0, "faulty id out of range: " +
                                       std::to_string(id));
        }
    }
    if (static_cast<int>(initials.size()) > n()) {
        throw ScenarioError(0, "more initial values than nodes");
    }
    for (const auto& rule : delay_rules) {
        if (rule.delay < 1) {
            throw ScenarioError(0, "delay rule delay must be >= 1");
        }
        if ((rule.from && (*rule.from < 0 || *rule.from >= n())) ||
            (rule.to && (*rule.to < 0 || *rule.to >= n()))) {
            throw ScenarioError(0, "delay rule node id out of range");
        }
    }
    for (const auto& c : checks) {
        const auto& known = all_check_names();
        if (std::find(known.begin(), known.end(), c) == known.end()) {
            throw ScenarioError(0, "unknown check name: " + c);
        }
    }
    // The config constructor re-validates the timeout relation.
    (void)config();
}

Scenario parse_scenario(const std::string& text) {
    Scenario sc;
    sc.checks = all_check_names();
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    bool saw_f = false;

    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#') {
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ScenarioError(lineno, "expected key = value");
        }
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw ScenarioError(lineno, "empty key");
        }

        if (key == "name") {
            if (!token_safe(val)) {
                throw ScenarioError(lineno, "name must be a plain token");
            }
            sc.name = val;
        } else if (key == "f") {
            sc.f = static_cast<int>(parse_int(val, lineno, "f"));
            saw_f = true;
        } else if (key == "to_vote_base") {
            sc.to_vote_base = parse_int(val, lineno, key);
        } else if (key == "to_commit_base") {
            sc.to_commit_base = parse_int(val, lineno, key);
        } else if (key == "gst") {
            sc.gst = parse_int(val, lineno, key);
        } else if (key == "delta") {
            sc.delta = parse_int(val, lineno, key);
        } else if (key == "post_gst_delay") {
            sc.post_gst_delay = parse_int(val, lineno, key);
        } else if (key == "seed") {
            sc.seed = parse_uint(val, lineno, key);
        } else if (key == "pre_gst_random") {
            auto dots = val.find("..");
            if (dots == std::string::npos) {
                throw ScenarioError(lineno, "pre_gst_random needs lo..hi");
            }
            Tick lo = parse_int(val.substr(0, dots), lineno, key);
            Tick hi = parse_int(val.substr(dots + 2), lineno, key);
            sc.pre_gst_random = std::make_pair(lo, hi);
        } else if (key == "horizon_ticks") {
            if (val == "auto") {
                sc.horizon_ticks = std::nullopt;
            } else {
                sc.horizon_ticks = parse_int(val, lineno, key);
            }
        } else if (key == "horizon_events") {
            sc.horizon_events = parse_int(val, lineno, key);
        } else if (key == "mutation") {
            auto m = mutation_from_name(val);
            if (!m) {
                throw ScenarioError(lineno, "unknown mutation: " + val);
            }
            sc.mutation = *m;
        } else if (key == "initial") {
            auto toks = split_ws(val);
            if (toks.size() != 2) {
                throw ScenarioError(lineno, "initial needs: <node> <value>");
            }
            int idx = static_cast<int>(parse_int(toks[0], lineno, "initial"));
            auto v = Value::from_token(toks[1]);
            if (!v || v->is_empty()) {
                throw ScenarioError(lineno,
                                    "initial value must be non-empty");
            }
            if (idx < 0 || idx >= sc.n()) {
                throw ScenarioError(lineno, "initial node out of range");
            }
            if (static_cast<int>(sc.initials.size()) <= idx) {
                sc.initials.resize(idx + 1);
            }
            sc.initials[idx] = *v;
        } else if (key == "faulty") {
            auto toks = split_ws(val);
            if (toks.size() != 2) {
                throw ScenarioError(lineno, "faulty needs: <node> <strategy>");
            }
            int id = static_cast<int>(parse_int(toks[0], lineno, "faulty"));
            auto strat = parse_strategy(toks[1]);
            if (!strat) {
                throw ScenarioError(lineno, "unknown strategy: " + toks[1]);
            }
            if (sc.adversary.faulty.count(id) != 0) {
                throw ScenarioError(lineno, "duplicate faulty node " +
                                                std::to_string(id));
            }
            sc.adversary.faulty[id] = *strat;
        } else if (key == "faulty_rotate") {
            sc.faulty_rotate = parse_bool(val, lineno, key);
        } else if (key == "delay") {
            sc.delay_rules.push_back(parse_delay_rule(val, lineno));
        } else if (key == "checks") {
            sc.checks = split_ws(val);
        } else {
            throw ScenarioError(lineno, "unknown key: " + key);
        }
    }
    if (!saw_f) {
        throw ScenarioError(lineno, "missing required key: f");
    }

    // Padded initials are part of the parsed form so round-trips compare
    // equal field by field.
    sc.initials = sc.resolved_initials();
    sc.validate();
    return sc;
}

std::string render_scenario(const Scenario& sc) {
    std::ostringstream out;
    out << "name = " << sc.name << "\n";
    out << "f = " << sc.f << "\n";
    out << "to_vote_base = " << sc.to_vote_base << "\n";
    out << "to_commit_base = " << sc.to_commit_base << "\n";
    out << "gst = " << sc.gst << "\n";
    out << "delta = " << sc.delta << "\n";
    if (sc.post_gst_delay) {
        out << "post_gst_delay = " << *sc.post_gst_delay << "\n";
    }
    out << "seed = " << sc.seed << "\n";
    if (sc.pre_gst_random) {
        out << "pre_gst_random = " << sc.pre_gst_random->first << ".."
            << sc.pre_gst_random->second << "\n";
    }
    if (sc.horizon_ticks) {
        out << "horizon_ticks = " << *sc.horizon_ticks << "\n";
    } else {
        out << "horizon_ticks = auto\n";
    }
    out << "horizon_events = " << sc.horizon_events << "\n";
    if (sc.mutation != Mutation::None) {
        out << "mutation = " << mutation_name(sc.mutation) << "\n";
    }
    for (size_t i = 0; i < sc.initials.size(); ++i) {
        if (!sc.initials[i].is_empty()) {
            out << "initial = " << i << " " << sc.initials[i].token() << "\n";
        }
    }
    for (const auto& [id, strat] : sc.adversary.faulty) {
        out << "faulty = " << id << " " << render_strategy(strat) << "\n";
    }
    if (sc.faulty_rotate) {
        out << "faulty_rotate = true\n";
    }
    for (const auto& rule : sc.delay_rules) {
        out << "delay = " << render_delay_rule(rule) << "\n";
    }
    out << "checks =";
    for (const auto& c : sc.checks) {
        out << " " << c;
    }
    out << "\n";
    return out.str();
}

} // namespace tsbft
