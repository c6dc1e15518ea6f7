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

#include "bdt/crypto/tsig.hpp"

#include <sodium.h>

#include <algorithm>
#include <set>

namespace bdt::crypto {
namespace {

void put_u32le(Bytes &out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t get_u32le(ByteView in, std::size_t &pos) {
    if (in.size() - pos < 4) throw Error(ErrorCode::Malformed, "truncated key blob");
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t{in[pos + i]} << (8 * i);
    pos += 4;
    return v;
}

} // namespace

bool KeyRing::verify(ByteView msg, const SigShare &share) const {
    if (share.signer == 0 || share.signer > parties()) return false;
    if (share.payload.size() != crypto_sign_BYTES) return false;

    const Digest key = Hasher().update_u64(share.signer).update(share.payload).update(msg).finish();
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    ++verifications_;
    const bool ok = crypto_sign_verify_detached(share.payload.data(), msg.data(), msg.size(),
                                                keys_[share.signer - 1].data()) == 0;
    memo_.emplace(key, ok);
    return ok;
}

TsigPublic::TsigPublic(std::uint32_t threshold, std::shared_ptr<const KeyRing> ring)
    : t_(threshold), ring_(std::move(ring)) {
    if (!ring_ || t_ == 0 || t_ > ring_->parties()) throw Error(ErrorCode::BadParams, "threshold out of range");
}

bool TsigPublic::verify_share(ByteView msg, const SigShare &share) const { return ring_->verify(msg, share); }

CombinedSig TsigPublic::combine(ByteView msg, std::span<const SigShare> shares) const {
    std::set<PartyId> signers;
    for (const auto &s : shares) {
        if (!signers.insert(s.signer).second) throw Error(ErrorCode::BadShareSet, "duplicate signer");
        if (!verify_share(msg, s)) throw Error(ErrorCode::BadShareSet, "invalid share");
    }
    if (shares.size() < t_) throw Error(ErrorCode::BadShareSet, "fewer than t shares");

    CombinedSig sig;
    sig.shares.assign(shares.begin(), shares.end());
    std::sort(sig.shares.begin(), sig.shares.end(),
              [](const SigShare &a, const SigShare &b) { return a.signer < b.signer; });
    sig.shares.resize(t_);
    return sig;
}

bool TsigPublic::verify(ByteView msg, const CombinedSig &sig) const {
    if (sig.shares.size() != t_) return false;
    std::set<PartyId> signers;
    for (const auto &s : sig.shares)
        if (!signers.insert(s.signer).second) return false;
    return std::all_of(sig.shares.begin(), sig.shares.end(),
                       [&](const SigShare &s) { return verify_share(msg, s); });
}

TsigSecretKey::TsigSecretKey(PartyId party, const std::array<std::uint8_t, 32> &seed) : party_(party), seed_(seed) {
    ensure_sodium();
    crypto_sign_seed_keypair(pk_.data(), sk_.data(), seed_.data());
}

SigShare TsigSecretKey::sign_share(ByteView msg) const {
    SigShare share{party_, Bytes(crypto_sign_BYTES)};
    crypto_sign_detached(share.payload.data(), nullptr, msg.data(), msg.size(), sk_.data());
    return share;
}

Bytes TsigSecretKey::serialize() const {
    Bytes out;
    put_u32le(out, party_);
    put_u32le(out, static_cast<std::uint32_t>(seed_.size()));
    out.insert(out.end(), seed_.begin(), seed_.end());
    put_u32le(out, static_cast<std::uint32_t>(pk_.size()));
    out.insert(out.end(), pk_.begin(), pk_.end());
    return out;
}

TsigSecretKey TsigSecretKey::deserialize(ByteView blob) {
    std::size_t pos = 0;
    const auto party = get_u32le(blob, pos);
    if (get_u32le(blob, pos) != 32 || blob.size() - pos < 32) throw Error(ErrorCode::Malformed, "bad seed length");
    std::array<std::uint8_t, 32> seed;
    std::copy_n(blob.begin() + static_cast<std::ptrdiff_t>(pos), 32, seed.begin());
    pos += 32;
    TsigSecretKey key(party, seed);
    if (get_u32le(blob, pos) != 32 || blob.size() - pos != 32 ||
        !std::equal(key.pk_.begin(), key.pk_.end(), blob.begin() + static_cast<std::ptrdiff_t>(pos)))
        throw Error(ErrorCode::Malformed, "public key mismatch");
    return key;
}

TsigKeys tsig_setup(std::uint32_t t, std::uint32_t n, std::uint64_t seed) {
    if (t == 0 || t > n) throw Error(ErrorCode::BadParams, "tsig_setup requires 1 <= t <= n");
    ensure_sodium();

    std::vector<TsigSecretKey> secrets;
    std::vector<PublicKey> keys;
    for (PartyId p = 1; p <= n; ++p) {
        const auto d = Hasher().update(to_bytes("bdt/tsig/party")).update_u64(seed).update_u64(p).finish();
        secrets.emplace_back(p, d.bytes);
        keys.push_back(secrets.back().public_key());
    }
    return TsigKeys{TsigPublic(t, std::make_shared<KeyRing>(std::move(keys))), std::move(secrets)};
}

} // namespace bdt::crypto
