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

#include <random>

#include "bdt/crypto/erasure.hpp"

namespace bdt::crypto {
namespace {

// Independent GF(2^8) arithmetic (shift-and-add, 0x11d) for the oracle.
std::uint8_t gmul(std::uint8_t a, std::uint8_t b) {
    unsigned r = 0, x = a;
    for (; b; b >>= 1, x <<= 1) {
        if (x & 0x100) x ^= 0x11d;
        if (b & 1) r ^= x;
    }
    return static_cast<std::uint8_t>(r);
}

std::uint8_t ginv(std::uint8_t a) {
    for (unsigned c = 1; c < 256; ++c)
        if (gmul(a, static_cast<std::uint8_t>(c)) == 1) return static_cast<std::uint8_t>(c);
    return 0;
}

// The code is systematic over evaluation points 0..n-1: fragment j at byte
// position b equals the degree-(k-1) polynomial through (i, stripe_i[b]),
// i < k, evaluated at x = j. Computed here by Lagrange interpolation.
std::vector<Bytes> oracle_encode(std::uint32_t k, std::uint32_t n, ByteView data) {
    Bytes padded(4 + data.size());
    const auto len = static_cast<std::uint32_t>(data.size());
    for (int i = 0; i < 4; ++i) padded[i] = static_cast<std::uint8_t>(len >> (24 - 8 * i));
    std::copy(data.begin(), data.end(), padded.begin() + 4);
    const std::size_t stripe = (padded.size() + k - 1) / k;
    padded.resize(stripe * k, 0);

    std::vector<Bytes> out(n, Bytes(stripe, 0));
    for (std::uint32_t j = 0; j < n; ++j)
        for (std::uint32_t i = 0; i < k; ++i) {
            std::uint8_t basis = 1;
            for (std::uint32_t m = 0; m < k; ++m) {
                if (m == i) continue;
                // (x - m) / (i - m) in characteristic 2.
                basis = gmul(basis, gmul(static_cast<std::uint8_t>(j ^ m), ginv(static_cast<std::uint8_t>(i ^ m))));
            }
            for (std::size_t b = 0; b < stripe; ++b) out[j][b] ^= gmul(basis, padded[i * stripe + b]);
        }
    return out;
}

std::vector<std::vector<std::uint32_t>> subsets(std::uint32_t n, std::uint32_t k) {
    std::vector<std::vector<std::uint32_t>> out;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask)
        if (static_cast<std::uint32_t>(__builtin_popcount(mask)) == k) {
            std::vector<std::uint32_t> s;
            for (std::uint32_t i = 0; i < n; ++i)
                if (mask & (1u << i)) s.push_back(i);
            out.push_back(s);
        }
    return out;
}

Bytes decode_subset(std::uint32_t k, std::uint32_t n, const std::vector<Bytes> &frags,
                    const std::vector<std::uint32_t> &idx) {
    std::vector<Fragment> chosen;
    for (auto i : idx) chosen.push_back({i, frags[i]});
    return erasure_decode(k, n, chosen);
}

TEST(Erasure, MatchesInterpolationOracle) {
    const Bytes data = to_bytes("abcdef");
    for (auto [k, n] : {std::pair{2u, 4u}, std::pair{3u, 7u}, std::pair{1u, 4u}, std::pair{5u, 7u}})
        EXPECT_EQ(erasure_encode(k, n, data), oracle_encode(k, n, data)) << k << "," << n;
}

TEST(Erasure, KEqualsNIsPlainSlicing) {
    const Bytes data = to_bytes("abcdefgh");
    const auto frags = erasure_encode(4, 4, data);
    ASSERT_EQ(frags.size(), 4u);
    for (const auto &f : frags) EXPECT_EQ(f.size(), 3u); // (8 + 4) / 4
    EXPECT_EQ(frags[0], (Bytes{0, 0, 0}));
    EXPECT_EQ(frags[1], (Bytes{8, 'a', 'b'}));
    EXPECT_EQ(decode_subset(4, 4, frags, {0, 1, 2, 3}), data);
}

TEST(Erasure, EveryPairOfFourRecoversPayload) {
    const Bytes data = to_bytes("abcdef");
    const auto frags = erasure_encode(2, 4, data);
    for (const auto &s : subsets(4, 2)) EXPECT_EQ(decode_subset(2, 4, frags, s), data);
}

TEST(Erasure, TooFewFragments) {
    const auto frags = erasure_encode(2, 4, to_bytes("abcdef"));
    try {
        decode_subset(2, 4, frags, {3});
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::InsufficientFragments);
    }
    // Duplicated indices do not count twice.
    std::vector<Fragment> dup{{1, frags[1]}, {1, frags[1]}};
    EXPECT_THROW(erasure_decode(2, 4, dup), Error);
}

TEST(Erasure, BadParams) {
    try {
        erasure_encode(5, 4, to_bytes("x"));
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::BadParams);
    }
    EXPECT_THROW(erasure_encode(0, 4, to_bytes("x")), Error);
}

TEST(Erasure, OneBytePayloadStillYieldsNFragments) {
    const auto frags = erasure_encode(3, 7, to_bytes("z"));
    EXPECT_EQ(frags.size(), 7u);
    for (const auto &s : subsets(7, 3)) EXPECT_EQ(decode_subset(3, 7, frags, s), to_bytes("z"));
}

TEST(ErasureProperty, AllKSubsetsOverRandomPayloads) {
    std::mt19937_64 rng(11);
    for (auto [k, n] : {std::pair{2u, 4u}, std::pair{3u, 7u}}) {
        const auto sets = subsets(n, k);
        for (int trial = 0; trial < 100; ++trial) {
            Bytes data(1 + rng() % 200);
            for (auto &b : data) b = static_cast<std::uint8_t>(rng());
            const auto frags = erasure_encode(k, n, data);
            for (const auto &s : sets) ASSERT_EQ(decode_subset(k, n, frags, s), data);
        }
    }
}

} // namespace
} // namespace bdt::crypto
