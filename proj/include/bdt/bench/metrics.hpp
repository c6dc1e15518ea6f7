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

#pragma once

#include <map>
#include <string>

#include "bdt/bench/scenario_config.hpp"

namespace bdt::bench {

struct BlockRow {
    std::uint64_t epoch = 0;
    std::uint64_t slot = 0;
    protocol::Path path = protocol::Path::Fastlane;
    std::uint64_t commit_round = 0;
    std::uint64_t rounds = 0; // commit round minus the round the block's content first appeared
    sim::Time commit_time = 0;
    std::size_t txs = 0;
    std::uint64_t msg_count = 0; // network messages since the previous commit
    std::uint64_t byte_count = 0;

    bool operator==(const BlockRow &) const = default;
};

struct TxRow {
    protocol::TxId id = 0;
    sim::Time inject_time = 0;
    sim::Time commit_time = 0;

    bool operator==(const TxRow &) const = default;
};

struct PathTotals {
    std::uint64_t blocks = 0;
    std::uint64_t txs = 0;
    std::uint64_t rounds = 0;
    std::uint64_t messages = 0;
    std::uint64_t bytes = 0;

    double per_block(std::uint64_t total) const { return blocks ? static_cast<double>(total) / blocks : 0.0; }
    bool operator==(const PathTotals &) const = default;
};

struct Aggregates {
    std::uint64_t committed_txs = 0;
    double latency_mean = 0;
    sim::Time latency_p50 = 0;
    sim::Time latency_p99 = 0;
    sim::Time horizon_time = 0;
    double throughput = 0; // committed txs per time unit
    PathTotals fastlane;
    PathTotals fallback;

    bool operator==(const Aggregates &) const = default;
};

/// Outcome of one seeded run in reportable form.
struct MetricsRecord {
    std::uint64_t seed = 0;
    std::uint32_t n = 0;
    std::uint32_t f = 0;
    protocol::FastlaneKind fastlane = protocol::FastlaneKind::Hs;
    std::string status; // quiescent | horizon
    bool all_finished = false;
    std::vector<BlockRow> blocks;
    std::vector<TxRow> txs;
    Aggregates aggregates;
    std::map<std::string, std::uint64_t> messages_by_proto;
    std::map<std::string, std::uint64_t> bytes_by_proto;
    std::uint64_t messages = 0;
    std::uint64_t bytes = 0;
    std::uint64_t lane_leader_bytes = 0;
    std::map<std::string, std::uint64_t> violations; // by check name, non-zero only
    std::uint64_t rejected_help_groups = 0;
    std::string trace_digest;

    std::uint64_t violation_total() const;
    /// Fastlane bytes the epoch leaders sent, per fastlane block.
    double leader_bytes_per_block() const;
};

/// Aggregates are a pure function of the rows and the horizon time.
Aggregates aggregate(const std::vector<BlockRow> &blocks, const std::vector<TxRow> &txs, sim::Time horizon_time);

MetricsRecord collect(const ScenarioConfig &config, const core::RunResult &result);

/// Stable-key JSON document (schema described in the README).
std::string to_json(const MetricsRecord &m);
MetricsRecord from_json(const std::string &text);
/// A few human-readable lines.
std::string summary(const MetricsRecord &m);

} // namespace bdt::bench
