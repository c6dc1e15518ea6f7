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

#include "bdt/bench/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "json.hpp"

namespace bdt::bench {

using json = nlohmann::ordered_json;

namespace {

sim::Time nearest_rank(const std::vector<sim::Time> &sorted, double q) {
    if (sorted.empty()) return 0;
    const auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(sorted.size())));
    return sorted[std::clamp<std::size_t>(rank, 1, sorted.size()) - 1];
}

const char *path_name(protocol::Path p) { return p == protocol::Path::Fastlane ? "fastlane" : "fallback"; }

protocol::Path path_from(const std::string &s) {
    if (s == "fastlane") return protocol::Path::Fastlane;
    if (s == "fallback") return protocol::Path::Fallback;
    throw Error(ErrorCode::Malformed, "unknown path '" + s + "'");
}

json totals_json(const PathTotals &t) {
    return json{{"blocks", t.blocks},
                {"txs", t.txs},
                {"rounds", t.rounds},
                {"messages", t.messages},
                {"bytes", t.bytes},
                {"rounds_per_block", t.per_block(t.rounds)},
                {"messages_per_block", t.per_block(t.messages)},
                {"bytes_per_block", t.per_block(t.bytes)}};
}

PathTotals totals_from(const json &j) {
    PathTotals t;
    t.blocks = j.at("blocks");
    t.txs = j.at("txs");
    t.rounds = j.at("rounds");
    t.messages = j.at("messages");
    t.bytes = j.at("bytes");
    return t;
}

} // namespace

std::uint64_t MetricsRecord::violation_total() const {
    std::uint64_t total = 0;
    for (const auto &[name, count] : violations) total += count;
    return total;
}

double MetricsRecord::leader_bytes_per_block() const {
    const auto blocks = aggregates.fastlane.blocks;
    return blocks ? static_cast<double>(lane_leader_bytes) / static_cast<double>(blocks) : 0.0;
}

Aggregates aggregate(const std::vector<BlockRow> &blocks, const std::vector<TxRow> &txs, sim::Time horizon_time) {
    Aggregates a;
    for (const auto &b : blocks) {
        auto &t = b.path == protocol::Path::Fastlane ? a.fastlane : a.fallback;
        ++t.blocks;
        t.txs += b.txs;
        t.rounds += b.rounds;
        t.messages += b.msg_count;
        t.bytes += b.byte_count;
    }
    std::vector<sim::Time> latency;
    latency.reserve(txs.size());
    for (const auto &t : txs) latency.push_back(t.commit_time - t.inject_time);
    std::sort(latency.begin(), latency.end());
    a.committed_txs = txs.size();
    if (!latency.empty()) {
        long double sum = 0;
        for (auto l : latency) sum += l;
        a.latency_mean = static_cast<double>(sum / latency.size());
    }
    a.latency_p50 = nearest_rank(latency, 0.50);
    a.latency_p99 = nearest_rank(latency, 0.99);
    a.horizon_time = horizon_time;
    a.throughput = horizon_time ? static_cast<double>(txs.size()) / static_cast<double>(horizon_time) : 0.0;
    return a;
}

MetricsRecord collect(const ScenarioConfig &config, const core::RunResult &result) {
    MetricsRecord m;
    m.seed = config.core.seed;
    m.n = config.core.n;
    m.f = config.core.f;
    m.fastlane = config.core.fastlane;
    m.status = result.status == sim::RunStatus::Quiescent ? "quiescent" : "horizon";
    m.all_finished = result.all_finished;
    std::uint64_t prev_msgs = 0, prev_bytes = 0;
    for (const auto &c : result.commits) {
        BlockRow row;
        row.epoch = c.epoch;
        row.slot = c.slot;
        row.path = c.path;
        row.commit_round = c.round;
        row.rounds = c.round - std::min(c.round, c.origin_round);
        row.commit_time = c.time;
        row.txs = c.txs;
        row.msg_count = c.messages - prev_msgs;
        row.byte_count = c.bytes - prev_bytes;
        prev_msgs = c.messages;
        prev_bytes = c.bytes;
        m.blocks.push_back(row);
        for (auto id : c.tx_ids) m.txs.push_back(TxRow{id, config.workload.inject_time(id - 1), c.time});
    }
    m.aggregates = aggregate(m.blocks, m.txs, result.end_time);
    for (std::size_t i = 0; i < sim::kProtoCount; ++i) {
        if (result.counters.messages_by_proto[i] == 0) continue;
        const std::string name = sim::to_string(static_cast<sim::Proto>(i));
        m.messages_by_proto[name] = result.counters.messages_by_proto[i];
        m.bytes_by_proto[name] = result.counters.bytes_by_proto[i];
    }
    m.messages = result.counters.messages;
    m.bytes = result.counters.bytes;
    m.lane_leader_bytes = result.counters.lane_leader_bytes;
    for (std::size_t i = 0; i < core::kCheckCount; ++i)
        if (result.violation_counts[i]) m.violations[core::to_string(static_cast<core::Check>(i))] = result.violation_counts[i];
    m.rejected_help_groups = result.rejected_help_groups;
    m.trace_digest = result.trace_digest.hex();
    return m;
}

std::string to_json(const MetricsRecord &m) {
    json doc;
    doc["schema"] = "bdt-metrics/1";
    doc["seed"] = m.seed;
    doc["n"] = m.n;
    doc["f"] = m.f;
    doc["fastlane"] = protocol::to_string(m.fastlane);
    doc["status"] = m.status;
    doc["all_finished"] = m.all_finished;
    const auto &a = m.aggregates;
    doc["aggregates"] = json{{"committed_txs", a.committed_txs},
                             {"latency_mean", a.latency_mean},
                             {"latency_p50", a.latency_p50},
                             {"latency_p99", a.latency_p99},
                             {"horizon_time", a.horizon_time},
                             {"throughput", a.throughput},
                             {"fastlane", totals_json(a.fastlane)},
                             {"fallback", totals_json(a.fallback)}};
    doc["messages"] = m.messages;
    doc["bytes"] = m.bytes;
    doc["messages_by_proto"] = m.messages_by_proto;
    doc["bytes_by_proto"] = m.bytes_by_proto;
    doc["lane_leader_bytes"] = m.lane_leader_bytes;
    doc["violations"] = m.violations;
    doc["rejected_help_groups"] = m.rejected_help_groups;
    doc["trace_digest"] = m.trace_digest;
    auto &blocks = doc["blocks"] = json::array();
    for (const auto &b : m.blocks)
        blocks.push_back(json{{"epoch", b.epoch},
                              {"slot", b.slot},
                              {"path", path_name(b.path)},
                              {"commit_round", b.commit_round},
                              {"rounds", b.rounds},
                              {"commit_time", b.commit_time},
                              {"txs", b.txs},
                              {"msg_count", b.msg_count},
                              {"byte_count", b.byte_count}});
    auto &txs = doc["txs"] = json::array();
    for (const auto &t : m.txs) txs.push_back(json::array({t.id, t.inject_time, t.commit_time}));
    return doc.dump(1) + "\n";
}

MetricsRecord from_json(const std::string &text) {
    try {
        const auto doc = json::parse(text);
        MetricsRecord m;
        m.seed = doc.at("seed");
        m.n = doc.at("n");
        m.f = doc.at("f");
        m.fastlane = parse_fastlane(doc.at("fastlane"));
        m.status = doc.at("status");
        m.all_finished = doc.at("all_finished");
        const auto &a = doc.at("aggregates");
        m.aggregates.committed_txs = a.at("committed_txs");
        m.aggregates.latency_mean = a.at("latency_mean");
        m.aggregates.latency_p50 = a.at("latency_p50");
        m.aggregates.latency_p99 = a.at("latency_p99");
        m.aggregates.horizon_time = a.at("horizon_time");
        m.aggregates.throughput = a.at("throughput");
        m.aggregates.fastlane = totals_from(a.at("fastlane"));
        m.aggregates.fallback = totals_from(a.at("fallback"));
        m.messages = doc.at("messages");
        m.bytes = doc.at("bytes");
        m.messages_by_proto = doc.at("messages_by_proto").get<std::map<std::string, std::uint64_t>>();
        m.bytes_by_proto = doc.at("bytes_by_proto").get<std::map<std::string, std::uint64_t>>();
        m.lane_leader_bytes = doc.at("lane_leader_bytes");
        m.violations = doc.at("violations").get<std::map<std::string, std::uint64_t>>();
        m.rejected_help_groups = doc.at("rejected_help_groups");
        m.trace_digest = doc.at("trace_digest");
        for (const auto &b : doc.at("blocks"))
            m.blocks.push_back(BlockRow{b.at("epoch"), b.at("slot"), path_from(b.at("path")), b.at("commit_round"),
                                        b.at("rounds"), b.at("commit_time"), b.at("txs"), b.at("msg_count"),
                                        b.at("byte_count")});
        for (const auto &t : doc.at("txs")) m.txs.push_back(TxRow{t.at(0), t.at(1), t.at(2)});
        return m;
    } catch (const json::exception &e) {
        throw Error(ErrorCode::Malformed, std::string("metrics document: ") + e.what());
    }
}

std::string summary(const MetricsRecord &m) {
    const auto &a = m.aggregates;
    const auto blocks = a.fastlane.blocks + a.fallback.blocks;
    const auto pct = [&](std::uint64_t part) { return blocks ? 100.0 * static_cast<double>(part) / blocks : 0.0; };
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(2);
    os << "seed " << m.seed << "  n=" << m.n << " f=" << m.f << "  fastlane=" << protocol::to_string(m.fastlane)
       << "  " << m.status << (m.all_finished ? "" : " (unfinished)") << '\n';
    os << "blocks " << blocks << ": fastlane " << a.fastlane.blocks << " (" << pct(a.fastlane.blocks) << "%), fallback "
       << a.fallback.blocks << " (" << pct(a.fallback.blocks) << "%)\n";
    os << "txs " << a.committed_txs << "  latency mean " << a.latency_mean << " p50 " << a.latency_p50 << " p99 "
       << a.latency_p99 << "  throughput " << a.throughput << " tx/unit over " << a.horizon_time << '\n';
    os << "rounds/block fastlane " << a.fastlane.per_block(a.fastlane.rounds) << " fallback "
       << a.fallback.per_block(a.fallback.rounds) << "  messages/block fastlane "
       << a.fastlane.per_block(a.fastlane.messages) << " fallback " << a.fallback.per_block(a.fallback.messages)
       << '\n';
    os << "messages " << m.messages << "  bytes " << m.bytes << "  leader bytes/block " << m.leader_bytes_per_block()
       << '\n';
    if (m.violations.empty()) {
        os << "monitors: clean\n";
    } else {
        os << "monitors:";
        for (const auto &[name, count] : m.violations) os << ' ' << name << '=' << count;
        os << '\n';
    }
    return os.str();
}

} // namespace bdt::bench
