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

#include "bdt/crypto/tpke.hpp"

#include <sodium.h>

#include <map>
#include <set>

namespace bdt::crypto {
namespace {

Scalar scalar_from_seed(ByteView domain, std::uint64_t seed, std::uint64_t index) {
    std::array<std::uint8_t, 64> wide;
    crypto_hash_sha512_state st;
    crypto_hash_sha512_init(&st);
    crypto_hash_sha512_update(&st, domain.data(), domain.size());
    std::uint8_t buf[16];
    for (int i = 0; i < 8; ++i) {
        buf[i] = static_cast<std::uint8_t>(seed >> (8 * i));
        buf[8 + i] = static_cast<std::uint8_t>(index >> (8 * i));
    }
    crypto_hash_sha512_update(&st, buf, sizeof buf);
    crypto_hash_sha512_final(&st, wide.data());
    Scalar s;
    crypto_core_ristretto255_scalar_reduce(s.data(), wide.data());
    return s;
}

Scalar scalar_from_uint(std::uint64_t v) {
    Scalar s{};
    for (int i = 0; i < 8; ++i) s[i] = static_cast<std::uint8_t>(v >> (8 * i));
    return s;
}

// Lagrange coefficients at zero for every member of the index set, with one
// field inversion. Memoized per set; a simulation sees few distinct sets.
const std::vector<Scalar> &lagrange_at_zero(const std::vector<PartyId> &set) {
    thread_local std::map<std::vector<PartyId>, std::vector<Scalar>> memo;
    if (auto it = memo.find(set); it != memo.end()) return it->second;

    const std::size_t t = set.size();
    std::vector<Scalar> num(t, scalar_from_uint(1)), den(t, scalar_from_uint(1));
    for (std::size_t i = 0; i < t; ++i) {
        const Scalar xi = scalar_from_uint(set[i]);
        for (std::size_t j = 0; j < t; ++j) {
            if (j == i) continue;
            const Scalar xj = scalar_from_uint(set[j]);
            Scalar diff;
            crypto_core_ristretto255_scalar_sub(diff.data(), xj.data(), xi.data());
            crypto_core_ristretto255_scalar_mul(num[i].data(), num[i].data(), xj.data());
            crypto_core_ristretto255_scalar_mul(den[i].data(), den[i].data(), diff.data());
        }
    }
    // prefix[i] = den[0] * ... * den[i-1]
    std::vector<Scalar> prefix(t + 1, scalar_from_uint(1));
    for (std::size_t i = 0; i < t; ++i)
        crypto_core_ristretto255_scalar_mul(prefix[i + 1].data(), prefix[i].data(), den[i].data());
    Scalar inv;
    crypto_core_ristretto255_scalar_invert(inv.data(), prefix[t].data());
    std::vector<Scalar> out(t);
    for (std::size_t i = t; i-- > 0;) {
        Scalar den_inv;
        crypto_core_ristretto255_scalar_mul(den_inv.data(), inv.data(), prefix[i].data());
        crypto_core_ristretto255_scalar_mul(inv.data(), inv.data(), den[i].data());
        crypto_core_ristretto255_scalar_mul(out[i].data(), num[i].data(), den_inv.data());
    }
    return memo.emplace(set, std::move(out)).first->second;
}

std::array<std::uint8_t, 32> derive_key(const GroupElement &ephemeral, const GroupElement &shared) {
    return Hasher()
        .update(to_bytes("bdt/tpke/key"))
        .update(ByteView(ephemeral))
        .update(ByteView(shared))
        .finish()
        .bytes;
}

Bytes associated_data(const Ciphertext &ct) {
    Writer w;
    w.blob(ct.label).raw(ct.ephemeral);
    return std::move(w).take();
}

const std::array<std::uint8_t, crypto_aead_chacha20poly1305_ietf_NPUBBYTES> kNonce{};

} // namespace

Bytes Ciphertext::serialize() const {
    Writer w;
    w.blob(label).raw(ephemeral).blob(body);
    return std::move(w).take();
}

Ciphertext Ciphertext::deserialize(ByteView data) {
    try {
        Reader r(data);
        Ciphertext ct;
        ct.label = r.blob();
        auto e = r.raw(32);
        std::copy(e.begin(), e.end(), ct.ephemeral.begin());
        ct.body = r.blob();
        r.expect_done();
        if (ct.body.size() < crypto_aead_chacha20poly1305_ietf_ABYTES)
            throw Error(ErrorCode::MalformedCiphertext, "body shorter than tag");
        return ct;
    } catch (const Error &e) {
        if (e.code() == ErrorCode::MalformedCiphertext) throw;
        throw Error(ErrorCode::MalformedCiphertext, e.what());
    }
}

DecShare TpkeSecretKey::dec_share(const Ciphertext &ct) const {
    DecShare share{party_, {}};
    if (crypto_core_ristretto255_is_valid_point(ct.ephemeral.data()) != 1 ||
        crypto_scalarmult_ristretto255(share.value.data(), share_.data(), ct.ephemeral.data()) != 0)
        throw Error(ErrorCode::MalformedCiphertext, "invalid ephemeral point");
    return share;
}

Bytes TpkeSecretKey::serialize() const {
    Bytes out;
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(party_ >> (8 * i)));
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(share_.size() >> (8 * i)));
    out.insert(out.end(), share_.begin(), share_.end());
    return out;
}

TpkeKeys tpke_setup(std::uint32_t t, std::uint32_t n, std::uint64_t seed) {
    if (t == 0 || t > n) throw Error(ErrorCode::BadParams, "tpke_setup requires 1 <= t <= n");
    ensure_sodium();

    // Polynomial of degree t-1; coefficient 0 is the master exponent.
    const Bytes domain = to_bytes("bdt/tpke/coeff");
    std::vector<Scalar> coeffs;
    for (std::uint32_t i = 0; i < t; ++i) coeffs.push_back(scalar_from_seed(domain, seed, i));

    TpkeKeys keys;
    keys.pub.threshold = t;
    keys.pub.parties = n;
    crypto_scalarmult_ristretto255_base(keys.pub.key.data(), coeffs[0].data());

    for (PartyId p = 1; p <= n; ++p) {
        // Horner evaluation at x = p.
        const Scalar x = scalar_from_uint(p);
        Scalar acc{};
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
            crypto_core_ristretto255_scalar_mul(acc.data(), acc.data(), x.data());
            crypto_core_ristretto255_scalar_add(acc.data(), acc.data(), it->data());
        }
        keys.secrets.emplace_back(p, acc);
    }
    return keys;
}

Ciphertext tpke_enc(const TpkePublic &pub, ByteView label, ByteView plaintext, ByteView randomness) {
    ensure_sodium();
    const Digest d = Hasher().update(to_bytes("bdt/tpke/ephemeral")).update(randomness).finish();
    std::array<std::uint8_t, 64> wide{};
    std::copy(d.bytes.begin(), d.bytes.end(), wide.begin());
    Scalar r;
    crypto_core_ristretto255_scalar_reduce(r.data(), wide.data());

    Ciphertext ct;
    ct.label.assign(label.begin(), label.end());
    GroupElement shared;
    if (crypto_scalarmult_ristretto255_base(ct.ephemeral.data(), r.data()) != 0 ||
        crypto_scalarmult_ristretto255(shared.data(), r.data(), pub.key.data()) != 0)
        throw Error(ErrorCode::BadParams, "degenerate encryption randomness");

    const auto key = derive_key(ct.ephemeral, shared);
    const Bytes ad = associated_data(ct);
    ct.body.resize(plaintext.size() + crypto_aead_chacha20poly1305_ietf_ABYTES);
    unsigned long long out_len = 0;
    crypto_aead_chacha20poly1305_ietf_encrypt(ct.body.data(), &out_len, plaintext.data(), plaintext.size(), ad.data(),
                                              ad.size(), nullptr, kNonce.data(), key.data());
    ct.body.resize(out_len);
    return ct;
}

Bytes tpke_dec(const TpkePublic &pub, const Ciphertext &ct, std::span<const DecShare> shares) {
    if (crypto_core_ristretto255_is_valid_point(ct.ephemeral.data()) != 1 ||
        ct.body.size() < crypto_aead_chacha20poly1305_ietf_ABYTES)
        throw Error(ErrorCode::MalformedCiphertext, "malformed ciphertext");

    std::vector<const DecShare *> chosen;
    std::set<PartyId> seen;
    for (const auto &s : shares) {
        if (s.party == 0 || s.party > pub.parties || !seen.insert(s.party).second) continue;
        chosen.push_back(&s);
        if (chosen.size() == pub.threshold) break;
    }
    if (chosen.size() < pub.threshold) throw Error(ErrorCode::InsufficientShares, "need t decryption shares");

    std::vector<PartyId> set;
    for (auto *s : chosen) set.push_back(s->party);

    const auto &lambdas = lagrange_at_zero(set);
    GroupElement combined{};
    for (std::size_t i = 0; i < chosen.size(); ++i) {
        GroupElement term;
        // Rejects encodings that are not valid ristretto255 points.
        if (crypto_scalarmult_ristretto255(term.data(), lambdas[i].data(), chosen[i]->value.data()) != 0)
            throw Error(ErrorCode::DecryptionFailed, "invalid or degenerate share");
        if (i == 0)
            combined = term;
        else
            crypto_core_ristretto255_add(combined.data(), combined.data(), term.data());
    }

    const auto key = derive_key(ct.ephemeral, combined);
    const Bytes ad = associated_data(ct);
    Bytes plain(ct.body.size() - crypto_aead_chacha20poly1305_ietf_ABYTES);
    unsigned long long plain_len = 0;
    if (crypto_aead_chacha20poly1305_ietf_decrypt(plain.data(), &plain_len, nullptr, ct.body.data(), ct.body.size(),
                                                  ad.data(), ad.size(), kNonce.data(), key.data()) != 0)
        throw Error(ErrorCode::DecryptionFailed, "integrity tag mismatch");
    plain.resize(plain_len);
    return plain;
}

} // namespace bdt::crypto
