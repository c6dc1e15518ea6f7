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
#include <vector>

#include "bdt/crypto/hash.hpp"

namespace bdt::crypto {

using GroupElement = std::array<std::uint8_t, 32>;
using Scalar = std::array<std::uint8_t, 32>;

/// Hashed threshold ElGamal over ristretto255. The dealer Shamir-shares the
/// decryption exponent (t-of-n); the payload is sealed with ChaCha20-Poly1305
/// under a key derived from the ephemeral DH point, with the label and the
/// ephemeral point as associated data. The AEAD tag is the integrity check
/// that rejects decryption shares computed for a different ciphertext.
struct Ciphertext {
    Bytes label;
    GroupElement ephemeral{};
    Bytes body;

    bool operator==(const Ciphertext &) const = default;

    Bytes serialize() const;
    /// Throws MalformedCiphertext on any framing problem.
    static Ciphertext deserialize(ByteView data);
};

struct DecShare {
    PartyId party = 0;
    GroupElement value{};

    bool operator==(const DecShare &) const = default;
};

struct TpkePublic {
    std::uint32_t threshold = 0;
    std::uint32_t parties = 0;
    GroupElement key{};
};

class TpkeSecretKey {
  public:
    TpkeSecretKey(PartyId party, const Scalar &share) : party_(party), share_(share) {}

    PartyId party() const { return party_; }
    /// Throws MalformedCiphertext when the ephemeral point is not canonical.
    DecShare dec_share(const Ciphertext &ct) const;

    /// u32le party | u32le len | scalar (little-endian, as libsodium stores it).
    Bytes serialize() const;

  private:
    PartyId party_;
    Scalar share_;
};

struct TpkeKeys {
    TpkePublic pub;
    std::vector<TpkeSecretKey> secrets; // secrets[i] belongs to party i + 1
};

/// Throws BadParams unless 1 <= t <= n.
TpkeKeys tpke_setup(std::uint32_t t, std::uint32_t n, std::uint64_t seed);

/// `randomness` seeds the ephemeral exponent; equal inputs give equal ciphertexts.
Ciphertext tpke_enc(const TpkePublic &pub, ByteView label, ByteView plaintext, ByteView randomness);

/// Uses the first `threshold` shares from distinct parties. Throws
/// InsufficientShares, MalformedCiphertext, or DecryptionFailed when the
/// integrity tag does not verify.
Bytes tpke_dec(const TpkePublic &pub, const Ciphertext &ct, std::span<const DecShare> shares);

} // namespace bdt::crypto
