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

#include "bdt/core/cluster.hpp"

namespace bdt::core {
namespace {

using protocol::Block;
using protocol::make_tx;

TEST(TxBuffer, FifoWithDedupAndCapacity) {
    TxBuffer buf(3);
    EXPECT_TRUE(buf.push(make_tx(5, 16)));
    EXPECT_FALSE(buf.push(make_tx(5, 16)));
    EXPECT_TRUE(buf.push(make_tx(6, 16)));
    EXPECT_TRUE(buf.push(make_tx(7, 16)));
    EXPECT_FALSE(buf.push(make_tx(8, 16)));
    EXPECT_EQ(buf.dropped(), 1u);
    EXPECT_EQ(buf.head(), 5u);

    const auto front = buf.front(2, [](protocol::TxId id) { return id == 5; });
    ASSERT_EQ(front.size(), 2u);
    EXPECT_EQ(protocol::tx_id(front[0]), 6u);
    EXPECT_EQ(protocol::tx_id(front[1]), 7u);

    buf.remove({make_tx(5, 16), make_tx(99, 16)});
    EXPECT_FALSE(buf.contains(5));
    EXPECT_EQ(buf.size(), 2u);
    EXPECT_EQ(buf.head(), 6u);
    buf.remove(buf.front(10));
    EXPECT_TRUE(buf.empty());
    EXPECT_FALSE(buf.head());
}

TEST(Faults, ParseAndFormatRoundTrip) {
    const std::string text = "1:crash@0,3:garbage_helper,2:silent_leader@1-2,4:censor@7";
    const auto faults = parse_faults(text);
    ASSERT_EQ(faults.size(), 4u);
    EXPECT_EQ(faults[0].kind, BehaviorKind::Crash);
    EXPECT_EQ(faults[0].arg, 0u);
    EXPECT_EQ(faults[2].epochs, (std::vector<std::uint64_t>{1, 2}));
    EXPECT_EQ(faults[3].arg, 7u);
    EXPECT_EQ(format_faults(faults), text);
    EXPECT_EQ(parse_faults(format_faults(faults)), faults);
    EXPECT_TRUE(parse_faults(" ").empty());
}

TEST(Faults, RejectsMalformed) {
    for (const char *bad : {"crash", "1:crash", "1:teleport", "x:crash@1", "1:garbage_helper@2",
                            "2:silent_leader@3-1", "1:censor@-4"})
        EXPECT_THROW(parse_faults(bad), Error) << bad;
}

TEST(Config, LeaderRotationAndValidation) {
    EXPECT_EQ(leader_of(1, 4), 1u);
    EXPECT_EQ(leader_of(4, 4), 4u);
    EXPECT_EQ(leader_of(5, 4), 1u);
    CoreConfig c;
    c.n = 6;
    c.f = 2;
    EXPECT_THROW(c.validate(), Error);
    c.n = 7;
    EXPECT_NO_THROW(c.validate());
}

// Notarized blocks of epoch 1 taken from a fault-free run.
struct Fixture {
    std::shared_ptr<const protocol::PublicSetup> pub;
    std::vector<Block> blocks;
};

const Fixture &fixture() {
    static const Fixture fx = [] {
        Scenario s;
        s.core.esize = 6;
        s.core.epochs = 1;
        const auto r = run_scenario(s);
        Fixture out;
        out.pub = protocol::make_setup(4, 1, s.core.seed).pub;
        for (const auto &b : r.logs[0])
            if (b.epoch == 1) out.blocks.push_back(b);
        return out;
    }();
    return fx;
}

TEST(Help, CodecRoundTrip) {
    const HelpRequest req{3, 2, 4};
    EXPECT_EQ(HelpRequest::decode(req.encode()), req);

    const auto &fx = fixture();
    ASSERT_GE(fx.blocks.size(), 3u);
    const HelpRequest want{1, 0, 3};
    const auto resp = make_help_response(4, 1, want, std::span(fx.blocks).first(3), 2);
    const auto back = HelpResponse::decode(resp.encode());
    EXPECT_EQ(back.request, want);
    EXPECT_EQ(back.root, resp.root);
    EXPECT_EQ(back.index, 1u);
    EXPECT_EQ(back.fragment, resp.fragment);
    EXPECT_EQ(back.branch, resp.branch);
    EXPECT_EQ(back.proofs, resp.proofs);

    auto bytes = resp.encode();
    bytes.pop_back();
    EXPECT_THROW(HelpResponse::decode(bytes), Error);
}

TEST(Help, CollectorRecoversFromDataShards) {
    const auto &fx = fixture();
    const HelpRequest req{1, 1, 3};
    const std::span<const Block> want = std::span(fx.blocks).subspan(1, 3);
    HelpCollector c(fx.pub, protocol::FastlaneKind::Hs, req);
    EXPECT_FALSE(c.add(2, make_help_response(4, 1, req, want, 2)));
    const auto got = c.add(4, make_help_response(4, 1, req, want, 4));
    ASSERT_TRUE(got);
    ASSERT_EQ(got->size(), 3u);
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_EQ((*got)[i].id(), want[i].id());
        EXPECT_EQ((*got)[i].txs, want[i].txs);
        EXPECT_TRUE((*got)[i].proof);
    }
    EXPECT_TRUE(c.done());
    EXPECT_FALSE(c.add(3, make_help_response(4, 1, req, want, 3)));
}

TEST(Help, CollectorRejectsMislabelledAndMismatched) {
    const auto &fx = fixture();
    const HelpRequest req{1, 0, 2};
    const std::span<const Block> want = std::span(fx.blocks).first(2);
    HelpCollector c(fx.pub, protocol::FastlaneKind::Hs, req);
    // Index must match the sender.
    EXPECT_FALSE(c.add(3, make_help_response(4, 1, req, want, 2)));
    // Response to another request.
    EXPECT_FALSE(c.add(2, make_help_response(4, 1, HelpRequest{1, 0, 1}, want.first(1), 2)));
    auto tampered = make_help_response(4, 1, req, want, 2);
    tampered.fragment[0] ^= 1;
    EXPECT_FALSE(c.add(2, tampered));
    EXPECT_EQ(c.rejected_responses(), 3u);
    EXPECT_FALSE(c.done());
}

TEST(Help, GarbageGroupIsDiscardedAndHonestGroupWins) {
    const auto &fx = fixture();
    const HelpRequest req{1, 0, 2};
    HelpCollector c(fx.pub, protocol::FastlaneKind::Hs, req);
    // Two colluding responders reach the decoding threshold with blocks lacking proofs.
    EXPECT_FALSE(c.add(1, make_garbage_response(4, 1, req, 1, 64)));
    EXPECT_FALSE(c.add(2, make_garbage_response(4, 1, req, 2, 64)));
    EXPECT_EQ(c.rejected_groups(), 0u); // waits for proofs that might still arrive
    EXPECT_FALSE(c.add(3, make_garbage_response(4, 1, req, 3, 64)));
    EXPECT_FALSE(c.add(4, make_garbage_response(4, 1, req, 4, 64)));
    EXPECT_EQ(c.rejected_groups(), 1u);
    EXPECT_FALSE(c.done());
}

TEST(Help, WrongRangeRejected) {
    const auto &fx = fixture();
    const HelpRequest req{1, 0, 2};
    // Correctly proven blocks, but slots 2..3 instead of 1..2.
    const std::span<const Block> shifted = std::span(fx.blocks).subspan(1, 2);
    HelpCollector c(fx.pub, protocol::FastlaneKind::Hs, req);
    EXPECT_FALSE(c.add(1, make_help_response(4, 1, req, shifted, 1)));
    EXPECT_FALSE(c.add(2, make_help_response(4, 1, req, shifted, 2)));
    EXPECT_EQ(c.rejected_groups(), 1u);
    const std::span<const Block> right = std::span(fx.blocks).first(2);
    EXPECT_FALSE(c.add(3, make_help_response(4, 1, req, right, 3)));
    EXPECT_TRUE(c.add(4, make_help_response(4, 1, req, right, 4)));
}

Block block(std::uint64_t e, std::uint64_t s, protocol::TxId id) { return Block{e, s, {make_tx(id, 16)}, {}}; }

TEST(Monitor, PrefixAndAgreement) {
    Monitor m(4, 1, {true, true, true, false});
    m.on_append(1, 0, block(1, 1, 1));
    m.on_append(2, 0, block(1, 1, 1));
    m.on_append(4, 0, block(1, 1, 9)); // faulty parties are ignored
    EXPECT_EQ(m.safety_count(), 0u);
    m.on_append(3, 0, block(1, 1, 2));
    m.on_append(3, 1, block(1, 2, 3));
    EXPECT_EQ(m.count(Check::Prefix), 1u);
    m.finish({{block(1, 1, 1)}, {block(1, 1, 1)}, {block(1, 1, 2)}, {}}, true);
    EXPECT_EQ(m.count(Check::Agreement), 1u);
    EXPECT_EQ(m.safety_count(), 2u);
}

TEST(Monitor, RevocationOnRewrite) {
    Monitor m(4, 1, {true, true, true, true});
    m.on_append(1, 0, block(1, 1, 1));
    m.on_append(1, 1, block(1, 2, 2));
    m.on_append(1, 1, block(1, 2, 2));
    EXPECT_EQ(m.count(Check::Revocation), 1u);
}

TEST(Monitor, NotarizabilityAndAbandon) {
    Monitor m(4, 1, {true, true, true, true});
    m.on_fastlane_deliver(1, 1, 1);
    m.on_proof(1, 1, 2); // one honest holder of slot 1, f+1 = 2 needed
    EXPECT_EQ(m.count(Check::Notarizability), 1u);
    m.on_fastlane_deliver(2, 1, 1);
    m.on_proof(2, 1, 2);
    EXPECT_EQ(m.count(Check::Notarizability), 1u);
    m.on_tcv_activate(1, 1, 2);
    m.on_proof(3, 1, 2);
    EXPECT_EQ(m.count(Check::AbandonQuiet), 0u);
    m.on_fastlane_deliver(3, 1, 2);
    m.on_fastlane_deliver(4, 1, 2);
    m.on_proof(3, 1, 3);
    EXPECT_EQ(m.count(Check::AbandonQuiet), 1u);
}

TEST(Monitor, PaceRangeAndPaceBelowLog) {
    Monitor m(4, 1, {true, true, true, true});
    for (PartyId p = 1; p <= 4; ++p) m.on_fastlane_deliver(p, 1, 4);
    m.on_proof(1, 1, 5);
    m.on_tcv_activate(1, 1, 5);
    m.on_tcv_activate(2, 1, 4);
    m.on_tcv_activate(3, 1, 3);
    m.on_pace(1, 1, 3, 4);
    EXPECT_EQ(m.count(Check::PaceBelowLog), 1u);
    m.finish({{}, {}, {}, {}}, false);
    EXPECT_EQ(m.count(Check::PaceRange), 1u);
    EXPECT_EQ(m.count(Check::Agreement), 0u);
}

} // namespace
} // namespace bdt::core
