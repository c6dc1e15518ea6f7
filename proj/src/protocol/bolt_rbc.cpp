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

#include "bdt/protocol/bolt_rbc.hpp"

namespace bdt::protocol {

BoltRbc::BoltRbc(std::shared_ptr<const PublicSetup> pub, const crypto::TsigSecretKey &key, std::uint64_t epoch,
                 PartyId leader, std::uint64_t esize, BatchSource batches, FastlaneHooks hooks, Options options)
    : pub_(std::move(pub)), key_(key), epoch_(epoch), leader_(leader), esize_(esize), batches_(std::move(batches)),
      hooks_(std::move(hooks)), options_(options) {}

bool BoltRbc::verify(const PublicSetup &pub, std::uint64_t epoch, std::uint64_t slot, const QuorumProof &proof) {
    return Prbc::verify(pub, sim::InstanceTag{epoch, sim::Proto::Prbc, slot}, proof.sig);
}

const Prbc *BoltRbc::instance(std::uint64_t slot) const {
    auto it = slots_.find(slot);
    return it == slots_.end() ? nullptr : it->second.get();
}

void BoltRbc::start(sim::Context &ctx) {
    if (!abandoned_) activate(ctx, 1);
}

void BoltRbc::activate(sim::Context &ctx, std::uint64_t slot) {
    active_ = slot;
    const sim::InstanceTag tag{epoch_, sim::Proto::Prbc, slot};
    Prbc::Hooks hooks;
    hooks.deliver = [this, slot](const Bytes &) {
        if (hooks_.first_seen && key_.party() != leader_) hooks_.first_seen(slot);
    };
    hooks.finalize = [this, &ctx, slot](const crypto::CombinedSig &sig) { on_finalize(ctx, slot, sig); };
    auto &inst = slots_[slot] = std::make_unique<Prbc>(pub_, key_, tag, leader_, std::move(hooks),
                                                       Prbc::Options{true, options_.equivocate});

    if (key_.party() == leader_) {
        if (hooks_.first_seen) hooks_.first_seen(slot);
        Writer w;
        write_txs(w, batches_(slot));
        inst->broadcast(ctx, w.bytes());
    }
    auto held = held_.extract(slot);
    if (!held.empty())
        for (const auto &env : held.mapped()) {
            if (abandoned_) return;
            inst->handle(ctx, env);
        }
}

void BoltRbc::handle(sim::Context &ctx, const sim::Envelope &env) {
    if (abandoned_) return;
    const auto slot = env.instance.sub;
    if (slot == 0 || slot > esize_) return;
    if (slot > active_) {
        held_[slot].push_back(env);
        return;
    }
    slots_.at(slot)->handle(ctx, env);
}

void BoltRbc::on_finalize(sim::Context &ctx, std::uint64_t slot, const crypto::CombinedSig &sig) {
    if (abandoned_ || slot != active_) return;
    const auto *inst = slots_.at(slot).get();
    std::vector<Tx> txs;
    try {
        Reader r(*inst->payload());
        txs = read_txs(r);
        r.expect_done();
    } catch (const Error &) {
        // A faulty leader dispersed a payload that is not a batch; the slot
        // still counts so that the pipeline stays in step across parties.
    }
    if (hooks_.proof_seen) hooks_.proof_seen(slot);
    delivered_ = slot;
    if (slot < esize_) activate(ctx, slot + 1);
    const auto digest = txs_digest(txs);
    if (hooks_.deliver) hooks_.deliver(Block{epoch_, slot, std::move(txs), QuorumProof{digest, sig}});
}

} // namespace bdt::protocol
