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

#include "bdt/protocol/prbc.hpp"

#include <spdlog/spdlog.h>

#include "bdt/crypto/erasure.hpp"

namespace bdt::protocol {

Prbc::Prbc(std::shared_ptr<const PublicSetup> pub, crypto::TsigSecretKey key, sim::InstanceTag tag, PartyId sender,
           Hooks hooks, Options options)
    : pub_(std::move(pub)), key_(std::move(key)), tag_(tag), sender_(sender), hooks_(std::move(hooks)),
      options_(options) {}

Bytes Prbc::done_message(const sim::InstanceTag &tag) {
    Writer w(32);
    w.raw(to_bytes("bdt/prbc")).raw(tag.encode());
    return std::move(w).take();
}

bool Prbc::verify(const PublicSetup &pub, const sim::InstanceTag &tag, const crypto::CombinedSig &sig) {
    return pub.quorum.verify(done_message(tag), sig);
}

Bytes Prbc::encode_fragment(Kind kind, const crypto::Digest &root, std::uint32_t index, const Bytes &fragment,
                            const std::vector<crypto::Digest> &branch) const {
    Writer w(64 + fragment.size() + 32 * branch.size());
    w.u8(kind).raw(tag_.encode()).raw(root.view()).u32(index).blob(fragment).u64(branch.size());
    for (const auto &d : branch) w.raw(d.view());
    return std::move(w).take();
}

void Prbc::send_vals(sim::Context &ctx, const Bytes &payload, PartyId first, PartyId last) {
    const auto fragments = crypto::erasure_encode(pub_->data_shards(), pub_->n, payload);
    const auto tree = crypto::merkle_build(fragments);
    for (PartyId p = first; p <= last; ++p) {
        const auto &proof = tree.proofs[p - 1];
        ctx.send(p, tag_, Val, encode_fragment(Val, tree.root, p - 1, fragments[p - 1], proof.branch));
    }
}

void Prbc::broadcast(sim::Context &ctx, const Bytes &payload) {
    if (!options_.equivocate) {
        send_vals(ctx, payload, 1, pub_->n);
        return;
    }
    Bytes other = payload;
    other.push_back(0xEE);
    send_vals(ctx, payload, 1, pub_->n / 2);
    send_vals(ctx, other, pub_->n / 2 + 1, pub_->n);
}

void Prbc::handle(sim::Context &ctx, const sim::Envelope &env) {
    Reader r(env.payload);
    try {
        const auto kind = r.u8();
        const auto id = r.raw(17);
        const Bytes expected = tag_.encode();
        if (!std::equal(id.begin(), id.end(), expected.begin())) return;
        switch (kind) {
        case Val:
        case Echo: on_fragment(ctx, static_cast<Kind>(kind), r, env.from); break;
        case Ready: on_ready(ctx, r, env.from); break;
        case Done: on_done(ctx, r, env.from); break;
        default: break;
        }
    } catch (const Error &) {
    }
}

void Prbc::on_fragment(sim::Context &ctx, Kind kind, Reader &r, PartyId from) {
    crypto::MerkleProof proof;
    const auto root_bytes = r.raw(crypto::Digest::size);
    std::copy(root_bytes.begin(), root_bytes.end(), proof.root.bytes.begin());
    proof.leaf_index = r.u32();
    const Bytes fragment = r.blob();
    const auto depth = r.count(crypto::Digest::size);
    for (std::uint64_t i = 0; i < depth; ++i) {
        crypto::Digest d;
        const auto raw = r.raw(crypto::Digest::size);
        std::copy(raw.begin(), raw.end(), d.bytes.begin());
        proof.branch.push_back(d);
    }
    r.expect_done();

    const PartyId owner = kind == Val ? key_.party() : from;
    if (proof.leaf_index != owner - 1) return;
    if (!crypto::merkle_verify(proof.root, fragment, proof, pub_->n)) return;

    if (kind == Val) {
        if (from != sender_ || val_seen_) return;
        val_seen_ = true;
        if (!echo_sent_) {
            echo_sent_ = true;
            ctx.multicast(tag_, Echo, encode_fragment(Echo, proof.root, proof.leaf_index, fragment, proof.branch));
        }
        return;
    }

    auto &state = roots_[proof.root];
    if (!state.echoes.insert(from).second) return;
    state.fragments.emplace(proof.leaf_index, fragment);
    if (state.echoes.size() >= pub_->quorum_size()) send_ready(ctx, proof.root);
    try_deliver(ctx, proof.root);
}

void Prbc::on_ready(sim::Context &ctx, Reader &r, PartyId from) {
    crypto::Digest root;
    const auto raw = r.raw(crypto::Digest::size);
    std::copy(raw.begin(), raw.end(), root.bytes.begin());
    r.expect_done();
    auto &state = roots_[root];
    if (!state.readies.insert(from).second) return;
    if (state.readies.size() >= pub_->weak_size()) send_ready(ctx, root);
    try_deliver(ctx, root);
}

void Prbc::send_ready(sim::Context &ctx, const crypto::Digest &root) {
    if (ready_sent_) return;
    ready_sent_ = true;
    Writer w(64);
    w.u8(Ready).raw(tag_.encode()).raw(root.view());
    ctx.multicast(tag_, Ready, w.bytes());
}

void Prbc::try_deliver(sim::Context &ctx, const crypto::Digest &root) {
    if (payload_ || poisoned_) return;
    auto &state = roots_[root];
    if (state.readies.size() < pub_->quorum_size() || state.fragments.size() < pub_->data_shards()) return;

    std::vector<crypto::Fragment> frags;
    for (const auto &[index, data] : state.fragments) frags.push_back({index, data});
    Bytes payload;
    try {
        payload = crypto::erasure_decode(pub_->data_shards(), pub_->n, frags);
    } catch (const Error &) {
        poisoned_ = true;
        spdlog::debug("prbc {} poisoned: undecodable fragments", tag_.str());
        return;
    }
    const auto recoded = crypto::erasure_encode(pub_->data_shards(), pub_->n, payload);
    if (crypto::merkle_build(recoded).root != root) {
        poisoned_ = true;
        spdlog::debug("prbc {} poisoned: root mismatch after re-encoding", tag_.str());
        return;
    }

    payload_ = std::move(payload);
    if (hooks_.deliver) hooks_.deliver(*payload_);
    if (!options_.with_done) return;
    const auto share = key_.sign_share(done_message(tag_));
    Writer w(96);
    w.u8(Done).raw(tag_.encode()).u32(share.signer).blob(share.payload);
    ctx.multicast(tag_, Done, w.bytes());
}

void Prbc::on_done(sim::Context &, Reader &r, PartyId from) {
    if (!options_.with_done || proof_) return;
    crypto::SigShare share;
    share.signer = r.u32();
    share.payload = r.blob();
    r.expect_done();
    if (share.signer != from || done_.contains(from)) return;
    if (!pub_->quorum.verify_share(done_message(tag_), share)) return;
    done_.emplace(from, std::move(share));
    try_finalize();
}

void Prbc::try_finalize() {
    if (proof_ || !payload_ || done_.size() < pub_->quorum_size()) return;
    std::vector<crypto::SigShare> shares;
    for (const auto &[p, s] : done_) shares.push_back(s);
    proof_ = pub_->quorum.combine(done_message(tag_), shares);
    if (hooks_.finalize) hooks_.finalize(*proof_);
}

} // namespace bdt::protocol
