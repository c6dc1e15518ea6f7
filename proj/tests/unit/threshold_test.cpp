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

#include <algorithm>

#include "bdt/crypto/coin.hpp"
#include "bdt/crypto/tpke.hpp"

namespace bdt::crypto {
namespace {

std::vector<std::vector<PartyId>> t_subsets(std::uint32_t n, std::uint32_t t) {
    std::vector<std::vector<PartyId>> out;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (static_cast<std::uint32_t>(__builtin_popcount(mask)) != t) continue;
        std::vector<PartyId> s;
        for (std::uint32_t i = 0; i < n; ++i)
            if (mask & (1u << i)) s.push_back(i + 1);
        out.push_back(s);
    }
    return out;
}

template <class E> ErrorCode code_of(E &&fn) {
    try {
        fn();
    } catch (const Error &e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorCode::Malformed;
}

TEST(Tsig, SetupIsDeterministic) {
    const auto a = tsig_setup(3, 4, 99);
    const auto b = tsig_setup(3, 4, 99);
    const auto c = tsig_setup(3, 4, 100);
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_EQ(a.secrets[i].serialize(), b.secrets[i].serialize());
        EXPECT_NE(a.secrets[i].public_key(), c.secrets[i].public_key());
    }
}

TEST(Tsig, DistinctKeysPerParty) {
    const auto keys = tsig_setup(3, 4, 1);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j) EXPECT_NE(keys.secrets[i].public_key(), keys.secrets[j].public_key());
}

TEST(Tsig, SingleParty) {
    const auto keys = tsig_setup(1, 1, 5);
    const Bytes msg = to_bytes("m");
    const std::vector<SigShare> shares{keys.secrets[0].sign_share(msg)};
    EXPECT_TRUE(keys.pub.verify(msg, keys.pub.combine(msg, shares)));
}

TEST(Tsig, BadParams) {
    EXPECT_EQ(code_of([] { tsig_setup(0, 4, 1); }), ErrorCode::BadParams);
    EXPECT_EQ(code_of([] { tsig_setup(5, 4, 1); }), ErrorCode::BadParams);
}

TEST(Tsig, KeyBlobRoundTrip) {
    const auto keys = tsig_setup(2, 3, 8);
    const Bytes blob = keys.secrets[1].serialize();
    ASSERT_EQ(blob.size(), 4u + 4 + 32 + 4 + 32);
    EXPECT_EQ(blob[0], 2); // little-endian party index
    const auto back = TsigSecretKey::deserialize(blob);
    EXPECT_EQ(back.public_key(), keys.secrets[1].public_key());
    Bytes bad = blob;
    bad.back() ^= 1;
    EXPECT_THROW(TsigSecretKey::deserialize(bad), Error);
}

TEST(Tsig, ShareBoundToMessage) {
    const auto keys = tsig_setup(3, 4, 2);
    const auto share = keys.secrets[0].sign_share(to_bytes("m"));
    EXPECT_TRUE(keys.pub.verify_share(to_bytes("m"), share));
    EXPECT_FALSE(keys.pub.verify_share(to_bytes("m'"), share));
    SigShare wrong_signer = share;
    wrong_signer.signer = 2;
    EXPECT_FALSE(keys.pub.verify_share(to_bytes("m"), wrong_signer));
}

TEST(Tsig, CombineRejectsDuplicatesAndGarbage) {
    const auto keys = tsig_setup(3, 4, 3);
    const Bytes msg = to_bytes("m");
    const auto s1 = keys.secrets[0].sign_share(msg);
    const auto s2 = keys.secrets[1].sign_share(msg);
    EXPECT_EQ(code_of([&] { keys.pub.combine(msg, std::vector<SigShare>{s1, s1, s2}); }), ErrorCode::BadShareSet);
    SigShare garbage{3, Bytes(64, 0xAB)};
    EXPECT_EQ(code_of([&] { keys.pub.combine(msg, std::vector<SigShare>{s1, s2, garbage}); }),
              ErrorCode::BadShareSet);
    EXPECT_EQ(code_of([&] { keys.pub.combine(msg, std::vector<SigShare>{s1, s2}); }), ErrorCode::BadShareSet);
}

TEST(Tsig, VerifyRejectsTamperedSignature) {
    const auto keys = tsig_setup(3, 4, 4);
    const Bytes msg = to_bytes("m");
    std::vector<SigShare> shares;
    for (int i = 0; i < 3; ++i) shares.push_back(keys.secrets[i].sign_share(msg));
    auto sig = keys.pub.combine(msg, shares);
    ASSERT_TRUE(keys.pub.verify(msg, sig));

    auto garbage = sig;
    garbage.shares[1].payload[5] ^= 0x40;
    EXPECT_FALSE(keys.pub.verify(msg, garbage));

    auto short_sig = sig;
    short_sig.shares.pop_back();
    EXPECT_FALSE(keys.pub.verify(msg, short_sig));

    auto dup = sig;
    dup.shares[2] = dup.shares[0];
    EXPECT_FALSE(keys.pub.verify(msg, dup));

    EXPECT_FALSE(keys.pub.verify(to_bytes("other"), sig));
}

// Robustness: every t-subset of honest shares combines into a verifying signature.
TEST(TsigProperty, EveryThresholdSubsetCombines) {
    const Bytes msg = to_bytes("slot");
    for (std::uint32_t n : {4u, 7u}) {
        const std::uint32_t f = (n - 1) / 3;
        for (std::uint32_t t : {f + 1, 2 * f + 1}) {
            const auto keys = tsig_setup(t, n, n * 100 + t);
            std::vector<SigShare> all;
            for (const auto &sk : keys.secrets) all.push_back(sk.sign_share(msg));
            for (const auto &subset : t_subsets(n, t)) {
                std::vector<SigShare> chosen;
                for (auto p : subset) chosen.push_back(all[p - 1]);
                std::reverse(chosen.begin(), chosen.end());
                const auto sig = keys.pub.combine(msg, chosen);
                ASSERT_TRUE(keys.pub.verify(msg, sig));
                ASSERT_TRUE(std::is_sorted(sig.shares.begin(), sig.shares.end(),
                                           [](auto &a, auto &b) { return a.signer < b.signer; }));
            }
            // t-1 honest shares padded with anything cannot verify.
            auto sig = keys.pub.combine(msg, all);
            sig.shares.back() = sig.shares.front();
            EXPECT_FALSE(keys.pub.verify(msg, sig));
        }
    }
}

TEST(Tpke, RoundTripWithTwoShares) {
    const auto keys = tpke_setup(2, 4, 17);
    const Bytes m = to_bytes("hello batch");
    const auto ct = tpke_enc(keys.pub, to_bytes("e1/p2"), m, to_bytes("r"));
    const std::vector<DecShare> shares{keys.secrets[0].dec_share(ct), keys.secrets[1].dec_share(ct)};
    EXPECT_EQ(tpke_dec(keys.pub, ct, shares), m);
}

TEST(Tpke, InsufficientShares) {
    const auto keys = tpke_setup(2, 4, 17);
    const auto ct = tpke_enc(keys.pub, to_bytes("l"), to_bytes("m"), to_bytes("r"));
    const std::vector<DecShare> one{keys.secrets[2].dec_share(ct)};
    EXPECT_EQ(code_of([&] { tpke_dec(keys.pub, ct, one); }), ErrorCode::InsufficientShares);
    const std::vector<DecShare> dup{one[0], one[0]};
    EXPECT_EQ(code_of([&] { tpke_dec(keys.pub, ct, dup); }), ErrorCode::InsufficientShares);
}

TEST(Tpke, SharesForOtherCiphertextFailIntegrity) {
    const auto keys = tpke_setup(2, 4, 17);
    const auto a = tpke_enc(keys.pub, to_bytes("l"), to_bytes("first"), to_bytes("ra"));
    const auto b = tpke_enc(keys.pub, to_bytes("l"), to_bytes("second"), to_bytes("rb"));
    const std::vector<DecShare> from_a{keys.secrets[0].dec_share(a), keys.secrets[3].dec_share(a)};
    EXPECT_EQ(code_of([&] { tpke_dec(keys.pub, b, from_a); }), ErrorCode::DecryptionFailed);
    EXPECT_EQ(tpke_dec(keys.pub, a, from_a), to_bytes("first"));
}

TEST(Tpke, LabelIsBound) {
    const auto keys = tpke_setup(2, 4, 3);
    auto ct = tpke_enc(keys.pub, to_bytes("epoch-1"), to_bytes("m"), to_bytes("r"));
    ct.label = to_bytes("epoch-2");
    const std::vector<DecShare> shares{keys.secrets[0].dec_share(ct), keys.secrets[1].dec_share(ct)};
    EXPECT_EQ(code_of([&] { tpke_dec(keys.pub, ct, shares); }), ErrorCode::DecryptionFailed);
}

TEST(Tpke, MalformedCiphertext) {
    const auto keys = tpke_setup(2, 4, 3);
    const auto ct = tpke_enc(keys.pub, to_bytes("l"), to_bytes("m"), to_bytes("r"));
    Bytes wire = ct.serialize();
    EXPECT_EQ(Ciphertext::deserialize(wire), ct);
    wire.pop_back();
    EXPECT_EQ(code_of([&] { Ciphertext::deserialize(wire); }), ErrorCode::MalformedCiphertext);

    auto bad_point = ct;
    bad_point.ephemeral.fill(0xFF);
    EXPECT_EQ(code_of([&] { keys.secrets[0].dec_share(bad_point); }), ErrorCode::MalformedCiphertext);
}

TEST(TpkeProperty, EveryThresholdSubsetDecrypts) {
    for (std::uint32_t n : {4u, 7u}) {
        const std::uint32_t t = (n - 1) / 3 + 1;
        const auto keys = tpke_setup(t, n, n);
        const Bytes m = to_bytes("selection for n=" + std::to_string(n));
        const auto ct = tpke_enc(keys.pub, to_bytes("l"), m, to_bytes("seed"));
        std::vector<DecShare> all;
        for (const auto &sk : keys.secrets) all.push_back(sk.dec_share(ct));
        for (const auto &subset : t_subsets(n, t)) {
            std::vector<DecShare> chosen;
            for (auto p : subset) chosen.push_back(all[p - 1]);
            ASSERT_EQ(tpke_dec(keys.pub, ct, chosen), m);
        }
        // A corrupted share among t is caught by the tag.
        std::vector<DecShare> chosen(all.begin(), all.begin() + t);
        chosen[0].value = all[t].value;
        EXPECT_EQ(code_of([&] { tpke_dec(keys.pub, ct, chosen); }), ErrorCode::DecryptionFailed);
    }
}

TEST(Coin, GatedOnReleases) {
    const auto keys = tsig_setup(2, 4, 6);
    const CoinOracle coin(42, keys.pub);
    const CoinId id{1, 3, 0, 1};
    const Bytes msg = id.share_message();
    std::vector<SigShare> released{keys.secrets[0].sign_share(msg)};
    EXPECT_FALSE(coin.get(id, released).has_value());
    released.push_back(released[0]);
    EXPECT_FALSE(coin.get(id, released).has_value());
    released.back() = keys.secrets[1].sign_share(to_bytes("not the coin"));
    EXPECT_FALSE(coin.get(id, released).has_value());
    released.back() = keys.secrets[1].sign_share(msg);
    const auto a = coin.get(id, released);
    ASSERT_TRUE(a.has_value());

    const std::vector<SigShare> other{keys.secrets[2].sign_share(msg), keys.secrets[3].sign_share(msg)};
    EXPECT_EQ(coin.get(id, other), a);
    EXPECT_EQ(coin.get(id, 1u), std::nullopt);
    EXPECT_EQ(coin.get(id, 2u), a);
}

// Chi-square with one degree of freedom; 10.83 is the 0.1% critical value.
TEST(CoinProperty, RoughlyUniformOverIds) {
    const auto keys = tsig_setup(2, 4, 6);
    const CoinOracle coin(2024, keys.pub);
    int ones = 0;
    const int trials = 1000;
    for (int i = 0; i < trials; ++i) ones += *coin.get(CoinId{1, 1, static_cast<std::uint64_t>(i), 1}, 2u) ? 1 : 0;
    const double expected = trials / 2.0;
    const double chi2 = 2 * (ones - expected) * (ones - expected) / expected;
    EXPECT_LT(chi2, 10.83) << ones;
}

} // namespace
} // namespace bdt::crypto
