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

#include <gtest/gtest.h>

#include "bdt/protocol/bolt_hs.hpp"
#include "bdt/protocol/bolt_rbc.hpp"
#include "harness.hpp"

namespace bdt::protocol {
namespace {

using sim::Context;
using sim::Envelope;

struct PrbcRun {
    std::map<PartyId, Bytes> delivered;
    std::map<PartyId, crypto::CombinedSig> proofs;
    std::map<PartyId, bool> poisoned;
    std::uint64_t messages = 0;
};

struct PrbcParams {
    std::uint32_t n = 4;
    std::uint32_t f = 1;
    std::uint64_t seed = 1;
    sim::DelayModel delay = sim::DelayModel::uniform(10);
    bool equivocate = false;
    std::vector<PartyId> participants; // empty: everyone
    std::vector<sim::CrashSpec> crashes;
    sim::Time max_time = 0;
};

const sim::InstanceTag kTag{3, sim::Proto::Prbc, 7};

PrbcRun run_prbc(const PrbcParams &params, const Bytes &payload) {
    auto setup = make_setup(params.n, params.f, 5);
    PrbcRun run;
    std::vector<std::unique_ptr<Prbc>> instances;
    std::vector<std::unique_ptr<sim::Process>> procs;
    for (PartyId p = 1; p <= params.n; ++p) {
        auto proc = std::make_unique<testing::LambdaProcess>();
        const bool joins = params.participants.empty() ||
                           std::find(params.participants.begin(), params.participants.end(), p) !=
                               params.participants.end();
        if (joins) {
            Prbc::Hooks hooks;
            hooks.deliver = [&run, p](const Bytes &b) { run.delivered[p] = b; };
            hooks.finalize = [&run, p](const crypto::CombinedSig &s) { run.proofs[p] = s; };
            instances.push_back(std::make_unique<Prbc>(setup.pub, setup.parties[p - 1].sig, kTag, 1, hooks,
                                                       Prbc::Options{true, params.equivocate && p == 1}));
            auto *inst = instances.back().get();
            if (p == 1) proc->start = [inst, &payload](Context &ctx) { inst->broadcast(ctx, payload); };
            proc->message = [inst](Context &ctx, const Envelope &env) { inst->handle(ctx, env); };
        }
        procs.push_back(std::move(proc));
    }
    auto cfg = testing::quiet_config(params.n, params.f, params.seed, params.delay);
    cfg.crashes = params.crashes;
    cfg.max_time = params.max_time;
    sim::Simulator simulator(cfg, std::move(procs));
    simulator.run();
    for (PartyId p = 1, i = 0; p <= params.n; ++p)
        if (params.participants.empty() || std::find(params.participants.begin(), params.participants.end(), p) !=
                                               params.participants.end())
            run.poisoned[p] = instances[i++]->poisoned();
    run.messages = simulator.counters().messages;
    return run;
}

Bytes payload_of(std::size_t size, std::uint8_t salt) {
    Bytes b(size);
    for (std::size_t i = 0; i < size; ++i) b[i] = static_cast<std::uint8_t>(i * 31 + salt);
    return b;
}

TEST(Prbc, HonestSenderEveryoneDeliversAndFinalizes) {
    const auto payload = payload_of(1000, 1);
    for (std::uint32_t n : {4u, 7u, 10u}) {
        PrbcParams params;
        params.n = n;
        params.f = (n - 1) / 3;
        params.delay = sim::DelayModel::jitter(1, 40);
        const auto run = run_prbc(params, payload);
        const auto setup = make_setup(n, params.f, 5);
        ASSERT_EQ(run.delivered.size(), n);
        ASSERT_EQ(run.proofs.size(), n);
        for (const auto &[p, b] : run.delivered) EXPECT_EQ(b, payload) << p;
        for (const auto &[p, s] : run.proofs) {
            EXPECT_TRUE(Prbc::verify(*setup.pub, kTag, s));
            EXPECT_FALSE(Prbc::verify(*setup.pub, sim::InstanceTag{3, sim::Proto::Prbc, 8}, s));
        }
        for (const auto &[p, bad] : run.poisoned) EXPECT_FALSE(bad);
    }
}

TEST(Prbc, EmptyPayload) {
    const auto run = run_prbc({}, {});
    ASSERT_EQ(run.delivered.size(), 4u);
    EXPECT_TRUE(run.delivered.at(3).empty());
}

// VAL, ECHO, READY and DONE: (n-1) + 3n(n-1).
TEST(Prbc, MessageCount) {
    EXPECT_EQ(run_prbc({}, payload_of(64, 0)).messages, 39u);
    PrbcParams seven;
    seven.n = 7;
    seven.f = 2;
    EXPECT_EQ(run_prbc(seven, payload_of(64, 0)).messages, 132u);
}

// Party 4's VAL is held back past the horizon; ECHO fragments alone let it deliver.
TEST(Prbc, DeliversWithoutOwnFragment) {
    PrbcParams params;
    sim::DelayRule rule;
    rule.from = 1;
    rule.to = 4;
    rule.kind = Prbc::Val;
    rule.fixed = 1'000'000;
    params.delay.rules.push_back(rule);
    params.max_time = 10'000;
    const auto payload = payload_of(300, 9);
    const auto run = run_prbc(params, payload);
    ASSERT_TRUE(run.delivered.contains(4));
    EXPECT_EQ(run.delivered.at(4), payload);
    EXPECT_TRUE(run.proofs.contains(4));
}

TEST(Prbc, SenderCrashAfterDispersal) {
    PrbcParams params;
    params.crashes.push_back({1, 1});
    const auto payload = payload_of(200, 4);
    const auto run = run_prbc(params, payload);
    for (PartyId p : {2u, 3u, 4u}) {
        ASSERT_TRUE(run.delivered.contains(p)) << p;
        EXPECT_EQ(run.delivered.at(p), payload);
    }
}

// Two payloads dispersed to the two halves: honest parties never deliver
// different values, and whoever delivers is joined by all the others.
TEST(Prbc, EquivocatingSenderAgreement) {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        for (std::uint32_t n : {4u, 7u}) {
            PrbcParams params;
            params.n = n;
            params.f = (n - 1) / 3;
            params.seed = seed;
            params.equivocate = true;
            params.delay = sim::DelayModel::jitter(1, 50);
            const auto run = run_prbc(params, payload_of(100, 2));
            std::map<PartyId, Bytes> honest = run.delivered;
            honest.erase(1);
            std::set<Bytes> values;
            for (const auto &[p, b] : honest) values.insert(b);
            EXPECT_LE(values.size(), 1u) << seed;
            if (!honest.empty()) {
                EXPECT_EQ(honest.size(), n - 1) << seed;
            }
        }
    }
}

// With only f+1 parties (sender plus f) running the instance there is no
// quorum of DONE shares, so no proof exists.
TEST(Prbc, NoProofWithoutQuorum) {
    PrbcParams params;
    params.participants = {1, 2};
    const auto run = run_prbc(params, payload_of(50, 1));
    EXPECT_TRUE(run.proofs.empty());
    PrbcParams seven;
    seven.n = 7;
    seven.f = 2;
    seven.participants = {1, 2, 3, 4};
    EXPECT_TRUE(run_prbc(seven, payload_of(50, 1)).proofs.empty());
}

struct LaneRun {
    std::map<PartyId, std::vector<Block>> delivered;
    std::uint64_t messages = 0;
    std::vector<std::uint64_t> bytes_by_party;
};

template <typename Lane>
LaneRun run_lane(std::uint32_t n, std::uint64_t esize, std::size_t tx_size, std::vector<PartyId> abandon = {}) {
    const std::uint32_t f = (n - 1) / 3;
    auto setup = make_setup(n, f, 5);
    LaneRun run;
    std::vector<std::unique_ptr<Lane>> lanes;
    std::vector<std::unique_ptr<sim::Process>> procs;
    for (PartyId p = 1; p <= n; ++p) {
        FastlaneHooks hooks;
        hooks.deliver = [&run, p](const Block &b) { run.delivered[p].push_back(b); };
        auto next = std::make_shared<TxId>(1);
        BatchSource batches = [next, tx_size](std::uint64_t) {
            return std::vector<Tx>{make_tx((*next)++, tx_size), make_tx((*next)++, tx_size)};
        };
        lanes.push_back(std::make_unique<Lane>(setup.pub, setup.parties[p - 1].sig, 1, 1, esize, batches, hooks,
                                               typename Lane::Options{}));
        auto *lane = lanes.back().get();
        if (std::find(abandon.begin(), abandon.end(), p) != abandon.end()) lane->abandon();
        auto proc = std::make_unique<testing::LambdaProcess>();
        proc->start = [lane](Context &ctx) { lane->start(ctx); };
        proc->message = [lane](Context &ctx, const Envelope &env) { lane->handle(ctx, env); };
        procs.push_back(std::move(proc));
    }
    sim::Simulator simulator(testing::quiet_config(n, f, 3, sim::DelayModel::jitter(5, 20)), std::move(procs));
    simulator.run();
    run.messages = simulator.counters().messages;
    run.bytes_by_party = simulator.counters().bytes_sent_by_party;
    return run;
}

TEST(BoltRbc, SequentialSlotsWithVerifiableProofs) {
    const auto run = run_lane<BoltRbc>(4, 4, 32);
    const auto setup = make_setup(4, 1, 5);
    ASSERT_EQ(run.delivered.size(), 4u);
    for (const auto &[p, blocks] : run.delivered) {
        ASSERT_EQ(blocks.size(), 4u);
        for (std::size_t i = 0; i < blocks.size(); ++i) {
            EXPECT_EQ(blocks[i].slot, i + 1);
            EXPECT_EQ(blocks[i].id(), run.delivered.at(1)[i].id());
            EXPECT_EQ(blocks[i].txs.size(), 2u);
            EXPECT_TRUE(BoltRbc::verify(*setup.pub, 1, blocks[i].slot, *blocks[i].proof));
            EXPECT_FALSE(BoltRbc::verify(*setup.pub, 1, blocks[i].slot + 1, *blocks[i].proof));
            EXPECT_FALSE(BoltHs::verify(*setup.pub, 1, blocks[i].slot, *blocks[i].proof));
        }
    }
    EXPECT_EQ(run.messages, 4u * 39);
}

TEST(BoltRbc, MessagesPerBlockGrowQuadratically) {
    const double four = run_lane<BoltRbc>(4, 3, 16).messages / 3.0;
    const double seven = run_lane<BoltRbc>(7, 3, 16).messages / 3.0;
    EXPECT_DOUBLE_EQ(four, 39.0);
    EXPECT_DOUBLE_EQ(seven, 132.0);
    EXPECT_NEAR(seven / four, 132.0 / 39.0, 1e-9);
}

// f+1 abandoning parties stop the pipeline at slot 1: without them no DONE quorum forms.
TEST(BoltRbc, AbandonStopsPipeline) {
    const auto run = run_lane<BoltRbc>(4, 4, 16, {3, 4});
    EXPECT_TRUE(run.delivered.empty());
}

// Dispersal spreads the batch: the leader sends less than under the
// leader-to-all multicast, and a follower relays a coded share of it. With
// VAL plus its own ECHO the leader still carries about twice a follower's load.
TEST(BoltRbc, LeaderBandwidthBelowMulticastLane) {
    const auto rbc = run_lane<BoltRbc>(7, 3, 4096);
    const auto hs = run_lane<BoltHs>(7, 3, 4096);
    EXPECT_LT(rbc.bytes_by_party[1], hs.bytes_by_party[1]);
    EXPECT_GT(rbc.bytes_by_party[2], hs.bytes_by_party[2]);
    const double ratio = static_cast<double>(rbc.bytes_by_party[1]) / rbc.bytes_by_party[2];
    EXPECT_GT(ratio, 1.5);
    EXPECT_LT(ratio, 2.5);
}

} // namespace
} // namespace bdt::protocol
