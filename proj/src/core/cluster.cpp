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

#include "bdt/core/cluster.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>

namespace bdt::core {

namespace {

class Recorder final : public CommitObserver {
  public:
    Recorder(PartyId reference, std::vector<CommitRecord> &out) : reference_(reference), out_(out) {}

    void attach(const sim::Simulator &sim) { sim_ = &sim; }

    void on_commit(const CommitInfo &info) override {
        if (info.party != reference_) return;
        CommitRecord r;
        r.epoch = info.block.epoch;
        r.slot = info.block.slot;
        r.path = info.path;
        r.txs = info.block.txs.size();
        r.time = info.time;
        r.round = info.round;
        r.origin_round = info.origin_round;
        if (sim_) {
            r.messages = sim_->counters().messages;
            r.bytes = sim_->counters().bytes;
        }
        for (const auto &tx : info.block.txs) r.tx_ids.push_back(protocol::tx_id(tx));
        out_.push_back(std::move(r));
    }

  private:
    PartyId reference_;
    std::vector<CommitRecord> &out_;
    const sim::Simulator *sim_ = nullptr;
};

} // namespace

std::size_t RunResult::committed_txs() const {
    std::size_t total = 0;
    for (const auto &c : commits) total += c.txs;
    return total;
}

RunResult run_scenario(const Scenario &s) {
    const auto &core = s.core;
    core.validate();
    const auto n = core.n;

    std::vector<Fault> behavior(n + 1);
    for (PartyId p = 1; p <= n; ++p) behavior[p].party = p;
    for (const auto &f : s.faults) {
        if (f.party == 0 || f.party > n) throw Error(ErrorCode::ConfigError, "fault names party out of range");
        if (behavior[f.party].kind != BehaviorKind::Honest)
            throw Error(ErrorCode::ConfigError, "two faults for party " + std::to_string(f.party));
        behavior[f.party] = f;
    }
    RunResult result;
    result.honest.assign(n, true);
    for (PartyId p = 1; p <= n; ++p) {
        const auto k = behavior[p].kind;
        result.honest[p - 1] = k == BehaviorKind::Honest || k == BehaviorKind::Mutant;
    }
    for (auto p : s.scripted_parties) {
        if (p == 0 || p > n) throw Error(ErrorCode::ConfigError, "scripted party out of range");
        result.honest[p - 1] = false;
    }
    const auto faulty = std::count(result.honest.begin(), result.honest.end(), false);
    if (faulty > static_cast<std::ptrdiff_t>(core.f))
        throw Error(ErrorCode::ConfigError, std::to_string(faulty) + " faulty parties exceed f = " +
                                                std::to_string(core.f));
    const auto ref = std::find(result.honest.begin(), result.honest.end(), true);
    if (ref == result.honest.end()) throw Error(ErrorCode::ConfigError, "no honest party");
    result.reference = static_cast<PartyId>(ref - result.honest.begin()) + 1;

    const auto setup = protocol::make_setup(n, core.f, core.seed);
    Monitor monitor(n, core.f, result.honest);
    Recorder recorder(result.reference, result.commits);

    sim::SimConfig sc;
    sc.n = n;
    sc.f = core.f;
    sc.seed = core.seed;
    sc.delay = s.delay;
    sc.max_events = s.max_events;
    sc.max_time = s.max_time;
    sc.trace = s.trace;
    sc.leader_of = [n](std::uint64_t e) { return e == 0 ? PartyId{0} : leader_of(e, n); };
    for (PartyId p = 1; p <= n; ++p)
        if (behavior[p].kind == BehaviorKind::Crash) sc.crashes.push_back({p, behavior[p].arg});

    std::vector<std::unique_ptr<sim::Process>> procs;
    std::vector<Node *> nodes(n + 1, nullptr);
    for (PartyId p = 1; p <= n; ++p) {
        const bool scripted = std::find(s.scripted_parties.begin(), s.scripted_parties.end(), p) !=
                              s.scripted_parties.end();
        if (scripted) {
            if (!s.scripted) throw Error(ErrorCode::ConfigError, "scripted parties without a factory");
            procs.push_back(s.scripted(p, setup));
            continue;
        }
        auto node = std::make_unique<Node>(
            NodeEnv{core, setup.pub, setup.parties[p - 1], p, behavior[p], s.workload, &monitor, &recorder});
        nodes[p] = node.get();
        procs.push_back(std::move(node));
    }

    sim::Simulator sim(sc, std::move(procs));
    recorder.attach(sim);
    result.status = sim.run();

    result.logs.resize(n);
    result.epochs.resize(n);
    result.all_finished = true;
    for (PartyId p = 1; p <= n; ++p) {
        if (!nodes[p]) continue;
        result.logs[p - 1] = nodes[p]->log();
        result.epochs[p - 1] = nodes[p]->epochs();
        result.rejected_help_groups += nodes[p]->rejected_help_groups();
        if (result.honest[p - 1] && !nodes[p]->finished()) result.all_finished = false;
    }
    monitor.finish(result.logs, result.status == sim::RunStatus::Quiescent);
    result.violations = monitor.violations();
    for (std::size_t c = 0; c < kCheckCount; ++c) result.violation_counts[c] = monitor.count(static_cast<Check>(c));
    result.safety_violations = monitor.safety_count();
    result.counters = sim.counters();
    result.trace_digest = sim.trace_digest();
    result.end_time = sim.now();
    result.events = sim.events();
    if (!result.all_finished)
        spdlog::info("run ended ({}) before every honest node closed epoch {}",
                     result.status == sim::RunStatus::Quiescent ? "quiescent" : "horizon", core.epochs);
    return result;
}

} // namespace bdt::core
