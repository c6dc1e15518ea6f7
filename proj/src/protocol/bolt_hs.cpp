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

#include "bdt/protocol/bolt_hs.hpp"

#include "bdt/protocol/bolt_rbc.hpp"

namespace bdt::protocol {

const char *to_string(FastlaneKind k) {
    switch (k) {
    case FastlaneKind::Hs: return "hs";
    case FastlaneKind::Rbc: return "rbc";
    case FastlaneKind::Timeout: return "timeout";
    }
    return "?";
}

bool fastlane_verify(FastlaneKind kind, const PublicSetup &pub, std::uint64_t epoch, std::uint64_t slot,
                     const QuorumProof &proof) {
    switch (kind) {
    case FastlaneKind::Hs: return BoltHs::verify(pub, epoch, slot, proof);
    case FastlaneKind::Rbc: return BoltRbc::verify(pub, epoch, slot, proof);
    case FastlaneKind::Timeout: return false;
    }
    return false;
}

BoltHs::BoltHs(std::shared_ptr<const PublicSetup> pub, const crypto::TsigSecretKey &key, std::uint64_t epoch,
               PartyId leader, std::uint64_t esize, BatchSource batches, FastlaneHooks hooks, Options options)
    : pub_(std::move(pub)), key_(key), epoch_(epoch), leader_(leader), esize_(esize), batches_(std::move(batches)),
      hooks_(std::move(hooks)), options_(options) {}

Bytes BoltHs::vote_message(std::uint64_t epoch, std::uint64_t slot, const crypto::Digest &digest) {
    Writer w(64);
    w.raw(to_bytes("bdt/bolt")).u64(epoch).u64(slot).raw(digest.view());
    return std::move(w).take();
}

bool BoltHs::verify(const PublicSetup &pub, std::uint64_t epoch, std::uint64_t slot, const QuorumProof &proof) {
    return pub.quorum.verify(vote_message(epoch, slot, proof.digest), proof.sig);
}

Bytes BoltHs::encode_proposal(std::uint64_t epoch, std::uint64_t slot, const std::vector<Tx> &txs,
                              const std::optional<crypto::CombinedSig> &sig) {
    Writer w;
    w.u8(Proposal).u64(epoch).u64(slot);
    write_txs(w, txs);
    write_sig(w, sig);
    return std::move(w).take();
}

Bytes BoltHs::encode_vote(std::uint64_t epoch, std::uint64_t slot, const crypto::SigShare &share) {
    Writer w;
    w.u8(Vote).u64(epoch).u64(slot).u32(share.signer).blob(share.payload);
    return std::move(w).take();
}

void BoltHs::start(sim::Context &ctx) {
    if (is_leader() && !abandoned_) propose(ctx, 1, std::nullopt);
}

void BoltHs::propose(sim::Context &ctx, std::uint64_t slot, const std::optional<crypto::CombinedSig> &prev) {
    proposing_ = slot;
    candidates_.clear();
    votes_.clear();
    std::vector<Tx> txs = slot <= esize_ ? batches_(slot) : std::vector<Tx>{};
    txs_[slot] = txs;
    if (hooks_.first_seen) hooks_.first_seen(slot);

    if (options_.equivocate && slot <= esize_) {
        std::vector<Tx> other(txs.rbegin(), txs.rend());
        other.push_back(make_tx(~slot, 8));
        const Bytes a = encode_proposal(epoch_, slot, txs, prev);
        const Bytes b = encode_proposal(epoch_, slot, other, prev);
        for (PartyId p = 1; p <= ctx.n(); ++p)
            if (p != key_.party()) ctx.send(p, tag(), Proposal, p <= ctx.n() / 2 ? a : b);
        candidates_.emplace(txs_digest(other), other);
        votes_[txs_digest(other)];
    } else {
        ctx.multicast(tag(), Proposal, encode_proposal(epoch_, slot, txs, prev));
    }

    if (slot > esize_) return; // closing proposal
    const auto digest = txs_digest(txs);
    candidates_.emplace(digest, txs);
    votes_[digest].push_back(key_.sign_share(vote_message(epoch_, slot, digest)));
}

void BoltHs::handle(sim::Context &ctx, const sim::Envelope &env) {
    if (abandoned_ || env.from == key_.party()) return;
    Reader r(env.payload);
    try {
        const auto kind = r.u8();
        if (kind == Proposal && env.from == leader_ && !is_leader())
            on_proposal(ctx, r);
        else if (kind == Vote && is_leader())
            on_vote(ctx, r, env.from);
    } catch (const Error &) {
        // Malformed input from a faulty sender is dropped.
    }
}

void BoltHs::on_vote(sim::Context &ctx, Reader &r, PartyId from) {
    const auto epoch = r.u64();
    const auto slot = r.u64();
    crypto::SigShare share;
    share.signer = r.u32();
    share.payload = r.blob();
    r.expect_done();
    if (epoch != epoch_ || slot != proposing_ || slot > esize_ || share.signer != from) return;

    for (auto &[digest, shares] : votes_) {
        const Bytes msg = vote_message(epoch_, slot, digest);
        if (!pub_->quorum.verify_share(msg, share)) continue;
        for (const auto &s : shares)
            if (s.signer == from) return;
        shares.push_back(share);
        if (shares.size() < pub_->quorum_size()) return;

        const auto sig = pub_->quorum.combine(msg, shares);
        const auto txs = candidates_.at(digest);
        if (hooks_.proof_seen) hooks_.proof_seen(slot);
        // Propose first: delivering the last slot may make the host abandon.
        propose(ctx, slot + 1, sig);
        deliver(slot, txs, sig);
        return;
    }
}

void BoltHs::on_proposal(sim::Context &ctx, Reader &r) {
    PendingProposal p;
    const auto epoch = r.u64();
    p.slot = r.u64();
    p.txs = read_txs(r);
    p.sig = read_sig(r);
    r.expect_done();
    if (epoch != epoch_ || p.slot <= accepted_ || p.slot > esize_ + 1) return;
    pending_[p.slot].push_back(std::move(p));
    drain_proposals(ctx);
}

void BoltHs::drain_proposals(sim::Context &ctx) {
    while (!abandoned_) {
        auto it = pending_.find(accepted_ + 1);
        if (it == pending_.end()) return;
        bool advanced = false;
        for (const auto &p : it->second)
            if (accept(ctx, p)) {
                advanced = true;
                break;
            }
        pending_.erase(it);
        if (!advanced) return;
    }
}

bool BoltHs::accept(sim::Context &ctx, const PendingProposal &p) {
    if (p.slot == 1) {
        if (p.sig) return false;
    } else {
        if (!p.sig) return false;
        const auto &prev = txs_.at(p.slot - 1);
        const QuorumProof proof{txs_digest(prev), *p.sig};
        if (!verify(*pub_, epoch_, p.slot - 1, proof)) return false;
        if (hooks_.proof_seen) hooks_.proof_seen(p.slot - 1);
        deliver(p.slot - 1, prev, *p.sig);
        if (abandoned_) return true;
    }
    accepted_ = p.slot;
    if (p.slot > esize_) return true;

    txs_[p.slot] = p.txs;
    if (hooks_.first_seen) hooks_.first_seen(p.slot);
    const auto digest = txs_digest(p.txs);
    ctx.send(leader_, tag(), Vote, encode_vote(epoch_, p.slot, key_.sign_share(vote_message(epoch_, p.slot, digest))));
    return true;
}

void BoltHs::deliver(std::uint64_t slot, const std::vector<Tx> &txs, const crypto::CombinedSig &sig) {
    delivered_ = slot;
    if (hooks_.deliver) hooks_.deliver(Block{epoch_, slot, txs, QuorumProof{txs_digest(txs), sig}});
}

} // namespace bdt::protocol
