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

#include "bdt/protocol/tcv_ba.hpp"

#include <spdlog/spdlog.h>

namespace bdt::protocol {

TcvBa::TcvBa(std::shared_ptr<const PublicSetup> pub, crypto::TsigSecretKey key, sim::InstanceTag tag,
             DecideFn on_decide)
    : pub_(std::move(pub)), key_(std::move(key)), tag_(tag), on_decide_(std::move(on_decide)) {}

Bytes TcvBa::encode(Kind kind, std::uint32_t round, std::uint64_t value) {
    Writer w(13);
    w.u8(kind).u32(round).u64(value);
    return std::move(w).take();
}

crypto::CoinId TcvBa::coin_id(std::uint64_t r) const {
    return crypto::CoinId{tag_.epoch, static_cast<std::uint32_t>(tag_.proto), tag_.sub, r};
}

void TcvBa::input(sim::Context &ctx, std::uint64_t value) {
    if (est_ || halted_) return;
    est_ = value;
    if (round_ == 1) send_bval(ctx, 1, value);
    progress(ctx);
}

void TcvBa::send_bval(sim::Context &ctx, std::uint64_t r, std::uint64_t v) {
    if (!rounds_[r].bval_sent.insert(v).second) return;
    ctx.multicast(tag_, Bval, encode(Bval, static_cast<std::uint32_t>(r), v));
}

void TcvBa::handle(sim::Context &ctx, const sim::Envelope &env) {
    if (halted_) return;
    Reader r(env.payload);
    try {
        const auto kind = r.u8();
        const std::uint64_t round = r.u32();
        if (round == 0) return;
        if (kind == CoinShare) {
            crypto::SigShare share;
            share.signer = r.u32();
            share.payload = r.blob();
            r.expect_done();
            on_coin_share(ctx, round, share, env.from);
            return;
        }
        const auto value = r.u64();
        r.expect_done();
        if (kind == Bval)
            on_bval(ctx, round, value, env.from);
        else if (kind == Aux)
            on_aux(ctx, round, value, env.from);
    } catch (const Error &) {
    }
}

void TcvBa::on_bval(sim::Context &ctx, std::uint64_t r, std::uint64_t v, PartyId from) {
    auto &st = rounds_[r];
    auto &senders = st.bval[v];
    if (!senders.insert(from).second) return;
    if (senders.size() >= pub_->weak_size()) send_bval(ctx, r, v);
    if (senders.size() >= pub_->quorum_size() && st.bin_values.insert(v).second) {
        if (!st.first_bin) st.first_bin = v;
        progress(ctx);
    }
}

void TcvBa::on_aux(sim::Context &ctx, std::uint64_t r, std::uint64_t v, PartyId from) {
    if (!rounds_[r].aux.emplace(from, v).second) return;
    if (r == round_) progress(ctx);
}

void TcvBa::on_coin_share(sim::Context &ctx, std::uint64_t r, const crypto::SigShare &share, PartyId from) {
    if (share.signer != from) return;
    auto &st = rounds_[r];
    if (st.coin_shares.contains(from)) return;
    if (!pub_->weak.verify_share(coin_id(r).share_message(), share)) return;
    st.coin_shares.insert(from);
    if (r == round_) progress(ctx);
}

std::uint64_t TcvBa::parity_pick(const std::set<std::uint64_t> &agreed, bool coin) {
    const std::uint64_t parity = coin ? 1 : 0;
    for (auto v : agreed)
        if (v % 2 == parity) return v;
    return *agreed.begin();
}

bool TcvBa::well_formed(const std::set<std::uint64_t> &agreed) {
    return agreed.size() == 1 || (agreed.size() == 2 && *agreed.rbegin() - *agreed.begin() == 1);
}

std::uint64_t TcvBa::next_estimate(const std::set<std::uint64_t> &agreed, bool coin) {
    if (!well_formed(agreed)) {
        ++violations_;
        spdlog::warn("tcv {} round {}: agreed set violates the two-consecutive precondition", tag_.str(), round_);
    }
    return parity_pick(agreed, coin);
}

// Drives the current round as far as the collected messages allow.
void TcvBa::progress(sim::Context &ctx) {
    while (!halted_) {
        auto &st = rounds_[round_];
        if (!st.aux_sent && st.first_bin) {
            st.aux_sent = true;
            ctx.multicast(tag_, Aux, encode(Aux, static_cast<std::uint32_t>(round_), *st.first_bin));
        }
        if (!st.aux_sent) return;

        if (!st.agreed) {
            std::set<std::uint64_t> values;
            std::size_t count = 0;
            for (const auto &[p, v] : st.aux)
                if (st.bin_values.contains(v)) {
                    ++count;
                    values.insert(v);
                }
            if (count < pub_->quorum_size()) return;
            st.agreed = std::move(values);
            const auto share = key_.sign_share(coin_id(round_).share_message());
            Writer w(96);
            w.u8(CoinShare).u32(static_cast<std::uint32_t>(round_)).u32(share.signer).blob(share.payload);
            ctx.multicast(tag_, CoinShare, w.bytes());
            continue; // own share arrives through loopback
        }

        if (!st.coin) {
            st.coin = pub_->coin->get(coin_id(round_), static_cast<std::uint32_t>(st.coin_shares.size()));
            if (!st.coin) return;
        }

        const bool coin = *st.coin;
        const auto &agreed = *st.agreed;
        if (agreed.size() == 1 && *agreed.begin() % 2 == (coin ? 1u : 0u)) {
            if (decision_) {
                halted_ = true;
                return;
            }
            decision_ = *agreed.begin();
            decision_round_ = round_;
            if (on_decide_) on_decide_(*decision_);
        }
        est_ = next_estimate(agreed, coin);
        ++round_;
        send_bval(ctx, round_, *est_);
    }
}

TcvBlackbox::TcvBlackbox(std::shared_ptr<const PublicSetup> pub, crypto::TsigSecretKey key, std::uint64_t epoch,
                         std::uint64_t sub, TcvBa::DecideFn on_decide)
    : pub_(pub), tag_{epoch, sim::Proto::Value, sub},
      aba_(pub, std::move(key), sim::InstanceTag{epoch, sim::Proto::Tcv, sub | kInnerBit},
           [this](std::uint64_t b) {
               bit_ = b == 1;
               try_output();
           }),
      on_decide_(std::move(on_decide)) {}

void TcvBlackbox::input(sim::Context &ctx, std::uint64_t value) {
    if (sent_) return;
    sent_ = true;
    Writer w(9);
    w.u8(Value).u64(value);
    ctx.multicast(tag_, Value, w.bytes());
}

void TcvBlackbox::handle(sim::Context &ctx, const sim::Envelope &env) {
    if (env.instance.proto == sim::Proto::Tcv) {
        aba_.handle(ctx, env);
        return;
    }
    try {
        Reader r(env.payload);
        if (r.u8() != Value) return;
        const auto v = r.u64();
        r.expect_done();
        if (!values_.emplace(env.from, v).second) return;
        ++support_[v];
    } catch (const Error &) {
        return;
    }
    try_input(ctx);
    try_output();
}

void TcvBlackbox::try_input(sim::Context &ctx) {
    if (aba_.has_input()) return;
    for (const auto &[v, count] : support_)
        if (count >= pub_->weak_size()) {
            aba_.input(ctx, v % 2);
            return;
        }
}

void TcvBlackbox::try_output() {
    if (decision_ || !bit_) return;
    for (const auto &[v, count] : support_)
        if (count >= pub_->weak_size() && (v % 2 == 1) == *bit_) {
            decision_ = v;
            if (on_decide_) on_decide_(v);
            return;
        }
}

} // namespace bdt::protocol
