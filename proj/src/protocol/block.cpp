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

#include "bdt/protocol/block.hpp"

namespace bdt::protocol {

Tx make_tx(TxId id, std::size_t size) {
    Tx tx(std::max<std::size_t>(size, 8), 0);
    for (int i = 0; i < 8; ++i) tx[i] = static_cast<std::uint8_t>(id >> (56 - 8 * i));
    for (std::size_t i = 8; i < tx.size(); ++i) tx[i] = static_cast<std::uint8_t>(id * 31 + i);
    return tx;
}

TxId tx_id(const Tx &tx) {
    TxId id = 0;
    for (std::size_t i = 0; i < 8 && i < tx.size(); ++i) id = (id << 8) | tx[i];
    return id;
}

crypto::Digest txs_digest(const std::vector<Tx> &txs) {
    Writer w;
    write_txs(w, txs);
    return crypto::hash(w.bytes());
}

crypto::Digest Block::id() const {
    Writer w;
    w.u64(epoch).u64(slot);
    write_txs(w, txs);
    return crypto::hash(w.bytes());
}

void write_txs(Writer &w, const std::vector<Tx> &txs) {
    w.u64(txs.size());
    for (const auto &tx : txs) w.blob(tx);
}

std::vector<Tx> read_txs(Reader &r) {
    const auto count = r.count(8);
    std::vector<Tx> txs;
    txs.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) txs.push_back(r.blob());
    return txs;
}

void write_sig(Writer &w, const std::optional<crypto::CombinedSig> &sig) {
    if (!sig) {
        w.u64(0);
        return;
    }
    w.u64(sig->shares.size());
    for (const auto &s : sig->shares) w.u32(s.signer).blob(s.payload);
}

std::optional<crypto::CombinedSig> read_sig(Reader &r) {
    const auto count = r.count(12);
    if (count == 0) return std::nullopt;
    crypto::CombinedSig sig;
    for (std::uint64_t i = 0; i < count; ++i) {
        crypto::SigShare s;
        s.signer = r.u32();
        s.payload = r.blob();
        sig.shares.push_back(std::move(s));
    }
    return sig;
}

void write_proof(Writer &w, const std::optional<QuorumProof> &proof) {
    if (!proof) {
        w.u8(0);
        return;
    }
    w.u8(1).raw(proof->digest.view());
    write_sig(w, proof->sig);
}

std::optional<QuorumProof> read_proof(Reader &r) {
    if (r.u8() == 0) return std::nullopt;
    QuorumProof p;
    const auto d = r.raw(crypto::Digest::size);
    std::copy(d.begin(), d.end(), p.digest.bytes.begin());
    auto sig = read_sig(r);
    if (!sig) throw Error(ErrorCode::Malformed, "proof without signature");
    p.sig = std::move(*sig);
    return p;
}

Bytes encode_contents(std::span<const Block> blocks) {
    Writer w;
    w.u64(blocks.size());
    for (const auto &b : blocks) {
        w.u64(b.epoch).u64(b.slot);
        write_txs(w, b.txs);
    }
    return std::move(w).take();
}

std::vector<Block> decode_contents(ByteView data) {
    Reader r(data);
    const auto count = r.count(24);
    std::vector<Block> blocks;
    for (std::uint64_t i = 0; i < count; ++i) {
        Block b;
        b.epoch = r.u64();
        b.slot = r.u64();
        b.txs = read_txs(r);
        blocks.push_back(std::move(b));
    }
    r.expect_done();
    return blocks;
}

} // namespace bdt::protocol
