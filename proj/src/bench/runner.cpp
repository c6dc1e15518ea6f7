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

#include "bdt/bench/runner.hpp"

#include <spdlog/spdlog.h>

#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "json.hpp"

namespace bdt::bench {

namespace {

void write_file(const std::filesystem::path &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::ConfigError, "cannot write " + path.string());
    out << text;
}

std::filesystem::path with_seed(const std::filesystem::path &path, std::uint64_t seed) {
    auto name = path.stem().string() + "-" + std::to_string(seed) + path.extension().string();
    return path.parent_path() / name;
}

} // namespace

RunOutcome run_config(const ScenarioConfig &config, const std::optional<std::filesystem::path> &trace_path) {
    auto scenario = config.scenario();
    std::ofstream trace;
    if (trace_path) {
        trace.open(*trace_path, std::ios::binary);
        if (!trace) throw Error(ErrorCode::ConfigError, "cannot write " + trace_path->string());
        scenario.trace = &trace;
    }
    const auto result = core::run_scenario(scenario);
    RunOutcome out;
    out.metrics = collect(config, result);
    out.monitor_fired = out.metrics.violation_total() > 0;
    const bool stopped_early = result.status == sim::RunStatus::Horizon || !result.all_finished;
    out.unexpected_horizon = stopped_early && !config.expect_horizon;
    if (out.monitor_fired)
        spdlog::error("seed {}: {} monitor violation(s)", config.core.seed, out.metrics.violation_total());
    if (out.unexpected_horizon) spdlog::error("seed {}: run stopped before its last epoch closed", config.core.seed);
    return out;
}

std::vector<std::uint64_t> sweep_seeds(const ScenarioConfig &config, std::optional<std::uint64_t> count) {
    std::set<std::uint64_t> seeds;
    if (count) {
        for (std::uint64_t i = 0; i < *count; ++i) seeds.insert(config.core.seed + i);
    } else if (!config.sweep.empty()) {
        seeds.insert(config.sweep.begin(), config.sweep.end());
    } else {
        seeds.insert(config.core.seed);
    }
    return {seeds.begin(), seeds.end()};
}

std::vector<RunOutcome> run_sweep(const ScenarioConfig &config, const std::vector<std::uint64_t> &seeds,
                                  const std::filesystem::path &out_dir,
                                  const std::optional<std::filesystem::path> &trace_path) {
    std::filesystem::create_directories(out_dir);
    std::vector<RunOutcome> out;
    for (auto seed : seeds) {
        auto c = config;
        c.core.seed = seed;
        std::optional<std::filesystem::path> trace;
        if (trace_path) trace = seeds.size() == 1 ? *trace_path : with_seed(*trace_path, seed);
        auto r = run_config(c, trace);
        write_file(out_dir / ("metrics-" + std::to_string(seed) + ".json"), to_json(r.metrics));
        write_file(out_dir / ("summary-" + std::to_string(seed) + ".txt"), summary(r.metrics));
        out.push_back(std::move(r));
    }
    return out;
}

std::string compare_table(const std::vector<CompareRow> &rows) {
    std::ostringstream os;
    os << std::left << std::setw(24) << "config" << std::right << std::setw(4) << "n" << std::setw(9) << "lane"
       << std::setw(9) << "path" << std::setw(8) << "blocks" << std::setw(10) << "rounds/b" << std::setw(10)
       << "msgs/b" << std::setw(12) << "bytes/b" << std::setw(14) << "leader B/b" << '\n';
    os << std::fixed << std::setprecision(2);
    for (const auto &row : rows) {
        const auto &m = row.metrics;
        for (auto path : {protocol::Path::Fastlane, protocol::Path::Fallback}) {
            const auto &t = path == protocol::Path::Fastlane ? m.aggregates.fastlane : m.aggregates.fallback;
            os << std::left << std::setw(24) << row.name << std::right << std::setw(4) << m.n << std::setw(9)
               << protocol::to_string(m.fastlane) << std::setw(9)
               << (path == protocol::Path::Fastlane ? "fastlane" : "fallback") << std::setw(8) << t.blocks
               << std::setw(10) << t.per_block(t.rounds) << std::setw(10) << t.per_block(t.messages) << std::setw(12)
               << t.per_block(t.bytes) << std::setw(14);
            if (path == protocol::Path::Fastlane)
                os << m.leader_bytes_per_block();
            else
                os << "-";
            os << '\n';
        }
    }
    return os.str();
}

std::string compare_json(const std::vector<CompareRow> &rows) {
    using json = nlohmann::ordered_json;
    json doc = json::array();
    for (const auto &row : rows) {
        const auto &m = row.metrics;
        json entry{{"config", row.name},
                   {"n", m.n},
                   {"fastlane", protocol::to_string(m.fastlane)},
                   {"seed", m.seed},
                   {"leader_bytes_per_block", m.leader_bytes_per_block()}};
        for (auto path : {protocol::Path::Fastlane, protocol::Path::Fallback}) {
            const auto &t = path == protocol::Path::Fastlane ? m.aggregates.fastlane : m.aggregates.fallback;
            entry[path == protocol::Path::Fastlane ? "fastlane" : "fallback"] =
                json{{"blocks", t.blocks},
                     {"rounds_per_block", t.per_block(t.rounds)},
                     {"messages_per_block", t.per_block(t.messages)},
                     {"bytes_per_block", t.per_block(t.bytes)}};
        }
        doc.push_back(entry);
    }
    return doc.dump(1) + "\n";
}

} // namespace bdt::bench
