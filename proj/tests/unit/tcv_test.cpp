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

#include "harness.hpp"

namespace bdt::protocol {
namespace {

using testing::AgreementOutcome;

constexpr std::uint64_t kSeeds = 40;

void expect_agreement(const AgreementOutcome &out, std::size_t honest, const std::set<std::uint64_t> &allowed,
                      std::uint64_t seed) {
    EXPECT_TRUE(out.quiescent) << "seed " << seed;
    ASSERT_EQ(out.decisions.size(), honest) << "seed " << seed;
    const auto v = out.decisions.begin()->second;
    EXPECT_TRUE(allowed.contains(v)) << "seed " << seed << " decided " << v;
    for (const auto &[p, d] : out.decisions) EXPECT_EQ(d, v) << "seed " << seed << " party " << p;
}

std::vector<std::uint64_t> mixed(std::uint32_t n, std::uint64_t low, std::uint64_t seed) {
    std::vector<std::uint64_t> in(n);
    for (std::uint32_t i = 0; i < n; ++i) in[i] = low + ((seed >> (i % 60)) ^ i) % 2;
    return in;
}

TEST(TcvParity, PickFollowsCoin) {
    EXPECT_EQ(TcvBa::parity_pick({4, 5}, true), 5u);
    EXPECT_EQ(TcvBa::parity_pick({4, 5}, false), 4u);
    EXPECT_EQ(TcvBa::parity_pick({6}, false), 6u);
    EXPECT_EQ(TcvBa::parity_pick({6}, true), 6u);
    EXPECT_EQ(TcvBa::parity_pick({0, 1}, true), 1u);
    EXPECT_EQ(TcvBa::parity_pick({3, 5}, false), 3u);
    EXPECT_EQ(TcvBa::parity_pick({3, 5, 8}, false), 8u);
}

TEST(TcvParity, WellFormedSets) {
    EXPECT_TRUE(TcvBa::well_formed({7}));
    EXPECT_TRUE(TcvBa::well_formed({7, 8}));
    EXPECT_FALSE(TcvBa::well_formed({7, 9}));
    EXPECT_FALSE(TcvBa::well_formed({7, 8, 9}));
}

TEST(Tcv, UnanimousInputIsDecided) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto out = testing::run_tcv(4, 1, seed, {5, 5, 5, 5}, {}, sim::DelayModel::jitter(1, 30));
        expect_agreement(out, 4, {5}, seed);
        EXPECT_EQ(out.violations, 0u);
    }
}

TEST(Tcv, AdjacentInputsAgreeAcrossSeeds) {
    for (std::uint32_t n : {4u, 7u}) {
        const std::uint32_t f = (n - 1) / 3;
        for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) {
            const auto inputs = mixed(n, 3, seed * 2654435761u);
            const auto out = testing::run_tcv(n, f, seed, inputs, {}, sim::DelayModel::jitter(1, 50));
            expect_agreement(out, n, {3, 4}, seed);
            EXPECT_EQ(out.violations, 0u);
            const std::set<std::uint64_t> inset(inputs.begin(), inputs.end());
            EXPECT_TRUE(inset.contains(out.decisions.begin()->second));
        }
    }
}

TEST(Tcv, BinaryInputsAreBinaryAgreement) {
    for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) {
        const auto out = testing::run_tcv(4, 1, seed, mixed(4, 0, seed * 7919), {}, sim::DelayModel::jitter(1, 50));
        expect_agreement(out, 4, {0, 1}, seed);
    }
}

// f parties send arbitrary values (including far-away ones and coin shares);
// honest parties still decide an honest input.
TEST(Tcv, ByzantineValuesAreNeverDecided) {
    for (std::uint32_t n : {4u, 7u}) {
        const std::uint32_t f = (n - 1) / 3;
        std::vector<PartyId> byz;
        for (std::uint32_t i = 0; i < f; ++i) byz.push_back(n - i);
        for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) {
            auto inputs = mixed(n, 10, seed * 40503);
            const auto out = testing::run_tcv(n, f, seed, inputs, byz, sim::DelayModel::jitter(1, 50));
            expect_agreement(out, n - f, {10, 11}, seed);
        }
    }
}

TEST(Tcv, RoundsStaySmall) {
    std::uint64_t worst = 0;
    double total = 0;
    std::uint64_t count = 0;
    for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) {
        const auto out = testing::run_tcv(4, 1, seed, mixed(4, 20, seed * 97), {}, sim::DelayModel::jitter(1, 50));
        for (const auto &[p, r] : out.rounds) {
            worst = std::max(worst, r);
            total += static_cast<double>(r);
            ++count;
        }
    }
    // The coin matches a fixed parity with probability 1/2 per round.
    EXPECT_LE(total / static_cast<double>(count), 4.0);
    EXPECT_LE(worst, 16u);
}

TEST(TcvBlackbox, AdjacentInputsAgree) {
    for (std::uint32_t n : {4u, 7u}) {
        const std::uint32_t f = (n - 1) / 3;
        for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) {
            const auto out =
                testing::run_blackbox(n, f, seed, mixed(n, 8, seed * 31337), {}, sim::DelayModel::jitter(1, 50));
            expect_agreement(out, n, {8, 9}, seed);
        }
    }
}

TEST(TcvBlackbox, ByzantineAnnouncementsIgnored) {
    for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) {
        const auto out =
            testing::run_blackbox(4, 1, seed, mixed(4, 8, seed * 12345), {4}, sim::DelayModel::jitter(1, 50));
        expect_agreement(out, 3, {8, 9}, seed);
    }
}

TEST(TcvBlackbox, UnanimousInput) {
    const auto out = testing::run_blackbox(4, 1, 3, {6, 6, 6, 6}, {}, sim::DelayModel::uniform(10));
    expect_agreement(out, 4, {6}, 3);
}

} // namespace
} // namespace bdt::protocol
