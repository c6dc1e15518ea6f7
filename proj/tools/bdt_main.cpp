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

// bdt: run seeded simulations and compare configurations.
//
//   bdt run <config> [--seed N] [--sweep K] [--trace out] [--fastlane hs|rbc|timeout] [--faults spec] [--out dir]
//   bdt compare <config>... [--out dir]
//
// Exit status is 1 when a monitor fired or a run stopped before finishing
// (unless the config sets expect_horizon), 2 on usage or config errors.

#include <spdlog/spdlog.h>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "bdt/bench/runner.hpp"

namespace {

void init_logging() {
    spdlog::set_level(spdlog::level::warn);
    if (const char *level = std::getenv("BDT_LOG_LEVEL")) {
        const auto parsed = spdlog::level::from_str(level);
        if (parsed == spdlog::level::off && std::string(level) != "off")
            spdlog::warn("BDT_LOG_LEVEL '{}' not recognized; keeping warn", level);
        else
            spdlog::set_level(parsed);
    }
}

} // namespace

int main(int argc, char **argv) {
    using namespace bdt;
    init_logging();

    CLI::App app{"Simulator for a fastlane/fallback asynchronous BFT protocol"};
    app.require_subcommand(1);

    auto *run = app.add_subcommand("run", "run one config, optionally over a seed sweep");
    std::string config_path;
    std::optional<std::uint64_t> seed, sweep;
    std::optional<std::string> trace, fastlane, faults;
    std::string out_dir = "bdt-out";
    run->add_option("config", config_path, "key = value config file")->required();
    run->add_option("--seed", seed, "override the config seed");
    run->add_option("--sweep", sweep, "run K consecutive seeds starting at the seed");
    run->add_option("--trace", trace, "write a TSV message trace (seed-suffixed in sweeps)");
    run->add_option("--fastlane", fastlane, "override the fastlane")->check(CLI::IsMember({"hs", "rbc", "timeout"}));
    run->add_option("--faults", faults, "override the faults, e.g. 1:crash@0,3:garbage_helper");
    run->add_option("--out", out_dir, "directory for metrics and summaries");

    auto *compare = app.add_subcommand("compare", "run several configs and tabulate per-block costs");
    std::vector<std::string> compare_paths;
    std::string compare_out = "bdt-out";
    compare->add_option("configs", compare_paths, "config files")->required()->expected(2, -1);
    compare->add_option("--out", compare_out, "directory for compare.json");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            auto config = bench::ScenarioConfig::load(config_path);
            if (seed) config.core.seed = *seed;
            if (fastlane) config.core.fastlane = bench::parse_fastlane(*fastlane);
            if (faults) config.faults = core::parse_faults(*faults);
            const auto seeds = bench::sweep_seeds(config, sweep);
            const auto trace_path = trace ? std::optional<std::filesystem::path>(*trace) : std::nullopt;
            const auto results = bench::run_sweep(config, seeds, out_dir, trace_path);
            bool ok = true;
            for (const auto &r : results) {
                std::cout << bench::summary(r.metrics);
                ok = ok && r.ok();
            }
            if (results.size() > 1) {
                std::size_t bad = 0;
                for (const auto &r : results) bad += r.ok() ? 0 : 1;
                std::cout << "sweep: " << results.size() << " seeds, " << bad << " with findings\n";
            }
            return ok ? 0 : 1;
        }
        std::vector<bench::CompareRow> rows;
        bool ok = true;
        for (const auto &path : compare_paths) {
            const auto config = bench::ScenarioConfig::load(path);
            auto r = bench::run_config(config);
            ok = ok && r.ok();
            rows.push_back({std::filesystem::path(path).stem().string(), std::move(r.metrics)});
        }
        std::cout << bench::compare_table(rows);
        std::filesystem::create_directories(compare_out);
        std::ofstream(std::filesystem::path(compare_out) / "compare.json") << bench::compare_json(rows);
        return ok ? 0 : 1;
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
