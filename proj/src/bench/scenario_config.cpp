/**
 * Copyright 2026 The BDT Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "bdt/bench/scenario_config.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace bdt::bench {

namespace {

std::string trim(const std::string &s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const std::string &what) { throw Error(ErrorCode::ConfigError, what); }

std::uint64_t to_u64(const std::string &s) {
    std::size_t used = 0;
    std::uint64_t v = 0;
    try {
        v = std::stoull(s, &used);
    } catch (const std::exception &) {
        used = 0;
    }
    if (s.empty() || used != s.size() || s.front() == '-') fail("expected a non-negative integer, got '" + s + "'");
    return v;
}

double to_double(const std::string &s) {
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception &) {
        used = 0;
    }
    if (s.empty() || used != s.size() || v < 0) fail("expected a non-negative number, got '" + s + "'");
    return v;
}

bool to_bool(const std::string &s) {
    if (s == "true" || s == "1") return true;
    if (s == "false" || s == "0") return false;
    fail("expected true or false, got '" + s + "'");
}

std::string from_bool(bool b) { return b ? "true" : "false"; }

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

sim::Proto to_proto(const std::string &s) {
    for (std::size_t i = 0; i < sim::kProtoCount; ++i)
        if (s == sim::to_string(static_cast<sim::Proto>(i))) return static_cast<sim::Proto>(i);
    fail("unknown protocol '" + s + "'");
}

sim::DelayRule to_rule(const std::string &text) {
    sim::DelayRule rule;
    std::istringstream in(text);
    std::string token;
    while (in >> token) {
        const auto eq = token.find('=');
        if (eq == std::string::npos) fail("delay_rule field '" + token + "' needs name=value");
        const auto name = token.substr(0, eq);
        const auto value = token.substr(eq + 1);
        if (name == "from") rule.from = static_cast<PartyId>(to_u64(value));
        else if (name == "to") rule.to = static_cast<PartyId>(to_u64(value));
        else if (name == "proto") rule.proto = to_proto(value);
        else if (name == "kind") rule.kind = static_cast<std::uint8_t>(to_u64(value));
        else if (name == "from_leader") rule.from_leader = to_bool(value);
        else if (name == "epoch_max") rule.epoch_max = to_u64(value);
        else if (name == "extra") rule.extra = to_u64(value);
        else if (name == "fixed") rule.fixed = to_u64(value);
        else fail("unknown delay_rule field '" + name + "'");
    }
    return rule;
}

std::string from_rule(const sim::DelayRule &r) {
    std::ostringstream os;
    if (r.from) os << " from=" << *r.from;
    if (r.to) os << " to=" << *r.to;
    if (r.proto) os << " proto=" << sim::to_string(*r.proto);
    if (r.kind) os << " kind=" << unsigned{*r.kind};
    if (r.from_leader) os << " from_leader=true";
    if (r.epoch_max) os << " epoch_max=" << *r.epoch_max;
    if (r.extra) os << " extra=" << r.extra;
    if (r.fixed) os << " fixed=" << *r.fixed;
    return trim(os.str());
}

struct Field {
    const char *key;
    std::function<void(ScenarioConfig &, const std::string &)> set;
    std::function<std::string(const ScenarioConfig &)> get;
};

#define BDT_U64(name, member)                                                                                          \
    Field {                                                                                                            \
        name, [](ScenarioConfig &c, const std::string &v) { c.member = static_cast<decltype(c.member)>(to_u64(v)); }, \
            [](const ScenarioConfig &c) { return std::to_string(c.member); }                                         \
    }
#define BDT_BOOL(name, member)                                                                                         \
    Field {                                                                                                            \
        name, [](ScenarioConfig &c, const std::string &v) { c.member = to_bool(v); },                                 \
            [](const ScenarioConfig &c) { return from_bool(c.member); }                                              \
    }

const std::vector<Field> &fields() {
    static const std::vector<Field> all = {
        BDT_U64("n", core.n),
        BDT_U64("f", core.f),
        Field{"fastlane", [](ScenarioConfig &c, const std::string &v) { c.core.fastlane = parse_fastlane(v); },
              [](const ScenarioConfig &c) { return std::string(protocol::to_string(c.core.fastlane)); }},
        BDT_U64("tau", core.tau),
        BDT_U64("censor_T", core.censor_T),
        BDT_U64("esize", core.esize),
        BDT_U64("batch", core.batch),
        BDT_U64("tx_size", core.tx_size),
        BDT_BOOL("empty_tail", core.empty_tail),
        BDT_U64("dumbo_blocks", core.dumbo_blocks),
        BDT_BOOL("dumbo_full_batch", core.dumbo_full_batch),
        BDT_BOOL("faithful_gap", core.faithful_gap),
        BDT_BOOL("duplicate_shift", core.duplicate_shift),
        BDT_U64("buf_capacity", core.buf_capacity),
        BDT_U64("epochs", core.epochs),
        BDT_U64("seed", core.seed),
        Field{"delay",
              [](ScenarioConfig &c, const std::string &v) {
                  if (v == "uniform") c.delay.kind = sim::DelayModel::Kind::Uniform;
                  else if (v == "jitter") c.delay.kind = sim::DelayModel::Kind::Jitter;
                  else fail("delay must be uniform or jitter, got '" + v + "'");
              },
              [](const ScenarioConfig &c) {
                  return std::string(c.delay.kind == sim::DelayModel::Kind::Uniform ? "uniform" : "jitter");
              }},
        BDT_U64("delay_lo", delay.lo),
        BDT_U64("delay_hi", delay.hi),
        BDT_U64("tick", delay.tick),
        Field{"faults", [](ScenarioConfig &c, const std::string &v) { c.faults = core::parse_faults(v); },
              [](const ScenarioConfig &c) { return core::format_faults(c.faults); }},
        BDT_U64("tx_count", workload.count),
        Field{"tx_rate", [](ScenarioConfig &c, const std::string &v) { c.workload.rate = to_double(v); },
              [](const ScenarioConfig &c) { return format_double(c.workload.rate); }},
        BDT_U64("max_events", max_events),
        BDT_U64("horizon", horizon),
        BDT_BOOL("expect_horizon", expect_horizon),
        Field{"sweep",
              [](ScenarioConfig &c, const std::string &v) {
                  c.sweep.clear();
                  std::stringstream ss(v);
                  std::string item;
                  while (std::getline(ss, item, ','))
                      if (!trim(item).empty()) c.sweep.push_back(to_u64(trim(item)));
              },
              [](const ScenarioConfig &c) {
                  std::string out;
                  for (auto s : c.sweep) out += (out.empty() ? "" : ",") + std::to_string(s);
                  return out;
              }},
    };
    return all;
}

#undef BDT_U64
#undef BDT_BOOL

} // namespace

protocol::FastlaneKind parse_fastlane(const std::string &name) {
    for (auto k : {protocol::FastlaneKind::Hs, protocol::FastlaneKind::Rbc, protocol::FastlaneKind::Timeout})
        if (name == protocol::to_string(k)) return k;
    fail("fastlane must be hs, rbc or timeout, got '" + name + "'");
}

ScenarioConfig ScenarioConfig::parse(const std::string &text, const std::string &source) {
    ScenarioConfig c;
    std::istringstream in(text);
    std::string raw;
    std::size_t line_no = 0;
    std::set<std::string> seen;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto where = source + ":" + std::to_string(line_no);
        auto line = raw.substr(0, raw.find('#'));
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail(where + ": expected key = value");
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        try {
            if (key == "delay_rule") {
                c.delay.rules.push_back(to_rule(value));
                continue;
            }
            const auto &all = fields();
            const auto it = std::find_if(all.begin(), all.end(), [&](const Field &f) { return key == f.key; });
            if (it == all.end()) fail("unknown key");
            if (!seen.insert(key).second) fail("duplicate key");
            it->set(c, value);
        } catch (const Error &e) {
            fail(where + ": " + key + ": " + e.detail());
        }
    }
    try {
        c.core.validate();
        if (c.delay.lo > c.delay.hi) fail("delay_lo exceeds delay_hi");
        if (c.delay.tick == 0) fail("tick must be positive");
        const auto faulty = std::count_if(c.faults.begin(), c.faults.end(),
                                          [](const core::Fault &x) { return x.kind != core::BehaviorKind::Mutant; });
        if (static_cast<std::uint64_t>(faulty) > c.core.f) fail("faults: more faulty parties than f");
    } catch (const Error &e) {
        fail(source + ": " + e.detail());
    }
    return c;
}

ScenarioConfig ScenarioConfig::load(const std::string &path) {
    std::ifstream in(path);
    if (!in) fail(path + ": cannot open");
    std::ostringstream text;
    text << in.rdbuf();
    return parse(text.str(), path);
}

std::string ScenarioConfig::to_text() const {
    std::string out;
    for (const auto &f : fields()) {
        out += f.key;
        out += " = ";
        out += f.get(*this);
        out += '\n';
    }
    for (const auto &r : delay.rules) out += "delay_rule = " + from_rule(r) + '\n';
    return out;
}

core::Scenario ScenarioConfig::scenario() const {
    core::Scenario s;
    s.core = core;
    s.delay = delay;
    s.faults = faults;
    s.workload = workload;
    s.max_events = max_events;
    s.max_time = horizon;
    return s;
}

} // namespace bdt::bench
