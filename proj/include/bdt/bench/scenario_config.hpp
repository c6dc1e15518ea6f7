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

#include <string>

#include "bdt/core/cluster.hpp"

namespace bdt::bench {

/// Everything needed to reproduce a run, as read from a flat `key = value`
/// file. `#` starts a comment. `delay_rule` may repeat.
///
///   n, f, fastlane (hs|rbc|timeout), tau, censor_T, esize, batch, tx_size,
///   empty_tail, dumbo_blocks, dumbo_full_batch, faithful_gap,
///   duplicate_shift, buf_capacity, epochs, seed,
///   delay (uniform|jitter), delay_lo, delay_hi, tick,
///   delay_rule = from=P to=P proto=NAME kind=K from_leader=B epoch_max=E extra=T fixed=T
///   faults (see core::parse_faults), tx_count, tx_rate,
///   max_events, horizon (0 = none), expect_horizon, sweep (comma-separated seeds)
struct ScenarioConfig {
    core::CoreConfig core;
    sim::DelayModel delay = sim::DelayModel::uniform(10);
    std::vector<core::Fault> faults;
    core::Workload workload;
    std::uint64_t max_events = 5'000'000;
    sim::Time horizon = 0;
    /// The run is expected to stop at the horizon rather than finish.
    bool expect_horizon = false;
    std::vector<std::uint64_t> sweep;

    bool operator==(const ScenarioConfig &) const = default;

    /// Throws ConfigError naming `source`, the line and the key.
    static ScenarioConfig parse(const std::string &text, const std::string &source = "<config>");
    static ScenarioConfig load(const std::string &path);
    /// Every key, one per line, in a fixed order; `parse` inverts it.
    std::string to_text() const;

    core::Scenario scenario() const;
};

protocol::FastlaneKind parse_fastlane(const std::string &name);

} // namespace bdt::bench
