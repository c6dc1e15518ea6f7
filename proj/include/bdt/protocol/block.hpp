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

#include <optional>

#include "bdt/crypto/tsig.hpp"

namespace bdt::protocol {

/// A transaction is an opaque byte string; its first 8 bytes (big-endian)
/// carry a workload-unique id used for bookkeeping.
using Tx = Bytes;
using TxId = std::uint64_t;

Tx make_tx(TxId id, std::size_t size);
TxId tx_id(const Tx &tx);

/// Notarization of one fastlane slot: the transactions' digest plus a quorum
/// signature. What the signature covers depends on the fastlane.
struct QuorumProof {
    crypto::Digest digest;
    crypto::CombinedSig sig;

    bool operator==(const QuorumProof &) const = default;
};

enum class Path : std::uint8_t { Fastlane = 0, Fallback = 1 };

struct Block {
    std::uint64_t epoch = 0;
    std::uint64_t slot = 0;
    std::vector<Tx> txs;
    std::optional<QuorumProof> proof;

    /// Identity excludes the proof, which differs between holders.
    crypto::Digest id() const;
};

crypto::Digest txs_digest(const std::vector<Tx> &txs);

void write_txs(Writer &w, const std::vector<Tx> &txs);
std::vector<Tx> read_txs(Reader &r);
/// u64 share count (0 = absent) followed by (u32 signer, blob) pairs.
void write_sig(Writer &w, const std::optional<crypto::CombinedSig> &sig);
std::optional<crypto::CombinedSig> read_sig(Reader &r);
void write_proof(Writer &w, const std::optional<QuorumProof> &proof);
std::optional<QuorumProof> read_proof(Reader &r);

/// Content-only encoding (epoch, slot, txs) of a run of blocks.
Bytes encode_contents(std::span<const Block> blocks);
std::vector<Block> decode_contents(ByteView data);

} // namespace bdt::protocol
