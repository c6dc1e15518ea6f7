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

#pragma once

#include <array>
#include <memory>
#include <unordered_map>
#include <vector>

#include "bdt/crypto/hash.hpp"

namespace bdt::crypto {

struct SigShare {
    PartyId signer = 0;
    Bytes payload;

    bool operator==(const SigShare &) const = default;
};

/// Transparent (t, n) threshold signature: exactly t individually valid shares
/// from distinct signers, sorted by signer.
struct CombinedSig {
    std::vector<SigShare> shares;

    bool operator==(const CombinedSig &) const = default;
};

using PublicKey = std::array<std::uint8_t, 32>;

/// Per-party Ed25519 verification keys plus a memo of verification results.
/// One ring is shared by every threshold view derived from the same setup.
/// Not thread-safe; a ring belongs to a single simulation.
class KeyRing {
  public:
    explicit KeyRing(std::vector<PublicKey> keys) : keys_(std::move(keys)) {}

    std::uint32_t parties() const { return static_cast<std::uint32_t>(keys_.size()); }
    const PublicKey &key(PartyId party) const { return keys_.at(party - 1); }
    bool verify(ByteView msg, const SigShare &share) const;

    std::uint64_t verifications() const { return verifications_; }

  private:
    std::vector<PublicKey> keys_;
    mutable std::unordered_map<Digest, bool> memo_;
    mutable std::uint64_t verifications_ = 0;
};

class TsigPublic {
  public:
    TsigPublic(std::uint32_t threshold, std::shared_ptr<const KeyRing> ring);

    std::uint32_t threshold() const { return t_; }
    std::uint32_t parties() const { return ring_->parties(); }
    const KeyRing &ring() const { return *ring_; }

    /// Same key material, different threshold.
    TsigPublic with_threshold(std::uint32_t t) const { return TsigPublic(t, ring_); }

    bool verify_share(ByteView msg, const SigShare &share) const;

    /// Combines the t lowest-indexed shares. Throws BadShareSet on duplicate
    /// signers, any invalid share, or fewer than t shares.
    CombinedSig combine(ByteView msg, std::span<const SigShare> shares) const;

    /// True iff sig holds exactly t distinct, individually valid shares for msg.
    bool verify(ByteView msg, const CombinedSig &sig) const;

  private:
    std::uint32_t t_;
    std::shared_ptr<const KeyRing> ring_;
};

class TsigSecretKey {
  public:
    TsigSecretKey(PartyId party, const std::array<std::uint8_t, 32> &seed);

    PartyId party() const { return party_; }
    SigShare sign_share(ByteView msg) const;
    const PublicKey &public_key() const { return pk_; }

    /// Deterministic key blob: u32le party | u32le seed_len | seed | u32le pk_len | pk.
    Bytes serialize() const;
    static TsigSecretKey deserialize(ByteView blob);

  private:
    PartyId party_;
    std::array<std::uint8_t, 32> seed_;
    std::array<std::uint8_t, 64> sk_;
    PublicKey pk_;
};

struct TsigKeys {
    TsigPublic pub;
    std::vector<TsigSecretKey> secrets; // secrets[i] belongs to party i + 1
};

/// Seeded dealer. Throws BadParams unless 1 <= t <= n.
TsigKeys tsig_setup(std::uint32_t t, std::uint32_t n, std::uint64_t seed);

} // namespace bdt::crypto
