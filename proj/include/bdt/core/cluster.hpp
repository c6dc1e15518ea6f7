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

#include <functional>

#include "bdt/core/node.hpp"

namespace bdt::core {

/// One committed block as seen by the reference node.
struct CommitRecord {
    std::uint64_t epoch = 0;
    std::uint64_t slot = 0;
    protocol::Path path = protocol::Path::Fastlane;
    std::size_t txs = 0;
    sim::Time time = 0;
    std::uint64_t round = 0;
    std::uint64_t origin_round = 0;
    std::uint64_t messages = 0; // network totals when the block committed
    std::uint64_t bytes = 0;
    std::vector<protocol::TxId> tx_ids;
};

struct Scenario {
    CoreConfig core;
    sim::DelayModel delay = sim::DelayModel::uniform(10);
    std::vector<Fault> faults;
    Workload workload;
    std::uint64_t max_events = 5'000'000;
    sim::Time max_time = 0;
    std::ostream *trace = nullptr;
    /// Replaces the Node of the listed parties; they count as faulty.
    std::function<std::unique_ptr<sim::Process>(PartyId, const protocol::Setup &)> scripted;
    std::vector<PartyId> scripted_parties;
};

struct RunResult {
    sim::RunStatus status = sim::RunStatus::Quiescent;
    bool all_finished = false; // every honest node closed its last epoch
    std::vector<std::vector<protocol::Block>> logs;
    std::vector<bool> honest;
    PartyId reference = 0;
    std::vector<CommitRecord> commits;
    std::vector<std::vector<EpochRecord>> epochs; // per party, index p-1
    std::vector<Violation> violations;
    std::array<std::uint64_t, kCheckCount> violation_counts{};
    std::uint64_t safety_violations = 0;
    sim::Counters counters;
    crypto::Digest trace_digest;
    sim::Time end_time = 0;
    std::uint64_t events = 0;
    std::uint64_t rejected_help_groups = 0;

    std::uint64_t count(Check c) const { return violation_counts[static_cast<std::size_t>(c)]; }
    /// Transactions committed by the reference node.
    std::size_t committed_txs() const;
};

/// Builds keys, nodes and network for `s`, runs to quiescence or the horizon,
/// and collects the outcome. Throws ConfigError for inconsistent scenarios.
RunResult run_scenario(const Scenario &s);

} // namespace bdt::core
