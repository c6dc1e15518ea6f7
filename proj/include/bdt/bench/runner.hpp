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

#include <filesystem>

#include "bdt/bench/metrics.hpp"

namespace bdt::bench {

struct RunOutcome {
    MetricsRecord metrics;
    bool monitor_fired = false;
    bool unexpected_horizon = false;

    bool ok() const { return !monitor_fired && !unexpected_horizon; }
};

/// One seeded run. The trace, if requested, goes to `trace_path`.
RunOutcome run_config(const ScenarioConfig &config, const std::optional<std::filesystem::path> &trace_path = {});

/// Seeds to run: `count` consecutive seeds from the config seed when `count`
/// is set, else the config's sweep list, else the config seed alone. Sorted.
std::vector<std::uint64_t> sweep_seeds(const ScenarioConfig &config, std::optional<std::uint64_t> count);

/// Writes metrics-<seed>.json and summary-<seed>.txt under `out_dir` for each
/// seed; results are returned sorted by seed.
std::vector<RunOutcome> run_sweep(const ScenarioConfig &config, const std::vector<std::uint64_t> &seeds,
                                  const std::filesystem::path &out_dir,
                                  const std::optional<std::filesystem::path> &trace_path = {});

struct CompareRow {
    std::string name;
    MetricsRecord metrics;
};

/// Aligned per-path table: blocks, rounds, messages and bytes per block, leader bytes per block.
std::string compare_table(const std::vector<CompareRow> &rows);
std::string compare_json(const std::vector<CompareRow> &rows);

} // namespace bdt::bench
