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

#include "bdt/protocol/acs.hpp"

namespace bdt::protocol {

Acs::Acs(std::shared_ptr<const PublicSetup> pub, const crypto::TsigSecretKey &key, std::uint64_t epoch,
         std::uint64_t base, OutputFn on_output)
    : pub_(std::move(pub)), key_(key), epoch_(epoch), base_(base), on_output_(std::move(on_output)) {
    for (PartyId j = 1; j <= pub_->n; ++j) {
        Prbc::Hooks hooks;
        hooks.deliver = [this, j](const Bytes &) {
            if (ctx_) on_delivered(*ctx_, j);
        };
        rbcs_.push_back(std::make_unique<Prbc>(pub_, key_, sim::InstanceTag{epoch, sim::Proto::AcsRbc, base + j}, j,
                                               std::move(hooks), Prbc::Options{false, false}));
        abas_.push_back(std::make_unique<TcvBa>(pub_, key_, sim::InstanceTag{epoch, sim::Proto::Aba, base + j},
                                                [this, j](std::uint64_t bit) {
                                                    if (ctx_) on_decided(*ctx_, j, bit);
                                                }));
    }
}

bool Acs::owns(const sim::InstanceTag &tag) const {
    return tag.epoch == epoch_ && (tag.proto == sim::Proto::AcsRbc || tag.proto == sim::Proto::Aba) &&
           tag.sub > base_ && tag.sub <= base_ + pub_->n;
}

void Acs::input(sim::Context &ctx, const Bytes &payload) {
    ctx_ = &ctx;
    auto &mine = *rbcs_.at(key_.party() - 1);
    if (!equivocate_) {
        mine.broadcast(ctx, payload);
        return;
    }
    auto twin = std::make_unique<Prbc>(pub_, key_, mine.tag(), key_.party(), Prbc::Hooks{},
                                       Prbc::Options{false, true});
    twin->broadcast(ctx, payload);
}

void Acs::handle(sim::Context &ctx, const sim::Envelope &env) {
    ctx_ = &ctx;
    if (!owns(env.instance)) return;
    const auto j = static_cast<PartyId>(env.instance.sub - base_);
    if (env.instance.proto == sim::Proto::AcsRbc)
        rbcs_[j - 1]->handle(ctx, env);
    else
        abas_[j - 1]->handle(ctx, env);
}

void Acs::on_delivered(sim::Context &ctx, PartyId j) {
    auto &aba = *abas_[j - 1];
    if (!aba.has_input()) aba.input(ctx, 1);
    try_output();
}

void Acs::on_decided(sim::Context &ctx, PartyId, std::uint64_t bit) {
    ++decided_;
    if (bit == 1) ++ones_;
    if (ones_ >= pub_->quorum_size() && !zeros_cast_) {
        zeros_cast_ = true;
        for (auto &aba : abas_)
            if (!aba->has_input()) aba->input(ctx, 0);
    }
    try_output();
}

void Acs::try_output() {
    if (output_ || decided_ < pub_->n) return;
    Output out;
    for (PartyId j = 1; j <= pub_->n; ++j) {
        if (abas_[j - 1]->decision() != 1u) continue;
        const auto &rbc = *rbcs_[j - 1];
        if (!rbc.delivered()) return;
        out.emplace_back(j, *rbc.payload());
    }
    output_ = std::move(out);
    if (on_output_) on_output_(*output_);
}

} // namespace bdt::protocol
