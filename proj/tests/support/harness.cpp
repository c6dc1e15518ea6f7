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

#include "harness.hpp"

#include <algorithm>
#include <random>

namespace bdt::testing {

using protocol::TcvBa;

sim::SimConfig quiet_config(std::uint32_t n, std::uint32_t f, std::uint64_t seed, sim::DelayModel delay) {
    sim::SimConfig cfg;
    cfg.n = n;
    cfg.f = f;
    cfg.seed = seed;
    cfg.delay = std::move(delay);
    return cfg;
}

namespace {

bool contains(const std::vector<PartyId> &v, PartyId p) { return std::find(v.begin(), v.end(), p) != v.end(); }

// Sends random values on every round it hears about, under the given tag.
struct TcvAdversary : sim::Process {
    sim::InstanceTag tag;
    std::mt19937_64 rng;
    std::uint64_t anchor;
    protocol::PartyKeys keys;
    std::shared_ptr<const protocol::PublicSetup> pub;
    std::set<std::uint64_t> seen;

    TcvAdversary(sim::InstanceTag t, std::uint64_t seed, std::uint64_t a, protocol::PartyKeys k,
                 std::shared_ptr<const protocol::PublicSetup> p)
        : tag(t), rng(seed), anchor(a), keys(std::move(k)), pub(std::move(p)) {}

    std::uint64_t pick() {
        switch (rng() % 5) {
        case 0: return anchor - 1;
        case 1: return anchor + 2;
        case 2: return 99;
        case 3: return rng();
        default: return anchor + rng() % 2;
        }
    }

    void spam(sim::Context &ctx, std::uint64_t r) {
        if (!seen.insert(r).second || r > 64) return;
        for (PartyId to = 1; to <= ctx.n(); ++to) {
            ctx.send(to, tag, TcvBa::Bval, TcvBa::encode(TcvBa::Bval, static_cast<std::uint32_t>(r), pick()));
            ctx.send(to, tag, TcvBa::Bval, TcvBa::encode(TcvBa::Bval, static_cast<std::uint32_t>(r), pick()));
            ctx.send(to, tag, TcvBa::Aux, TcvBa::encode(TcvBa::Aux, static_cast<std::uint32_t>(r), pick()));
        }
        if (rng() % 2) {
            const crypto::CoinId id{tag.epoch, static_cast<std::uint32_t>(tag.proto), tag.sub, r};
            const auto share = keys.sig.sign_share(id.share_message());
            Writer w;
            w.u8(TcvBa::CoinShare).u32(static_cast<std::uint32_t>(r)).u32(share.signer).blob(share.payload);
            ctx.multicast(tag, TcvBa::CoinShare, w.bytes());
        }
    }

    void on_start(sim::Context &ctx) override {
        if (tag.sub & protocol::TcvBlackbox::kInnerBit) {
            const sim::InstanceTag values{tag.epoch, sim::Proto::Value, tag.sub & ~protocol::TcvBlackbox::kInnerBit};
            for (PartyId to = 1; to <= ctx.n(); ++to) {
                Writer w;
                w.u8(protocol::TcvBlackbox::Value).u64(pick());
                ctx.send(to, values, protocol::TcvBlackbox::Value, w.bytes());
            }
        }
        spam(ctx, 1);
    }
    void on_message(sim::Context &ctx, const sim::Envelope &env) override {
        if (env.instance != tag || env.payload.size() < 5) return;
        const std::uint64_t r = (std::uint64_t{env.payload[1]} << 24) | (std::uint64_t{env.payload[2]} << 16) |
                                (std::uint64_t{env.payload[3]} << 8) | env.payload[4];
        spam(ctx, r);
    }
    void on_tick(sim::Context &ctx) override { ctx.stop_ticking(); }
};

template <class Instance, class Make>
AgreementOutcome run_agreement(std::uint32_t n, std::uint32_t f, std::uint64_t seed,
                               const std::vector<std::uint64_t> &inputs, const std::vector<PartyId> &byzantine,
                               sim::DelayModel delay, sim::InstanceTag adversary_tag, Make make) {
    auto setup = protocol::make_setup(n, f, seed);
    std::vector<std::unique_ptr<Instance>> instances(n);
    std::vector<std::unique_ptr<sim::Process>> procs;
    AgreementOutcome out;
    const std::uint64_t anchor = *std::min_element(inputs.begin(), inputs.end());
    for (PartyId p = 1; p <= n; ++p) {
        if (contains(byzantine, p)) {
            procs.push_back(std::make_unique<TcvAdversary>(adversary_tag, seed * 131 + p, anchor, setup.parties[p - 1],
                                                           setup.pub));
            continue;
        }
        instances[p - 1] = make(setup, p, [&out, p](std::uint64_t v) { out.decisions[p] = v; });
        auto proc = std::make_unique<LambdaProcess>();
        auto *inst = instances[p - 1].get();
        const auto value = inputs[p - 1];
        proc->start = [inst, value](sim::Context &ctx) { inst->input(ctx, value); };
        proc->message = [inst](sim::Context &ctx, const sim::Envelope &env) { inst->handle(ctx, env); };
        procs.push_back(std::move(proc));
    }
    sim::SimConfig cfg = quiet_config(n, f, seed, std::move(delay));
    cfg.max_events = 2'000'000;
    sim::Simulator simulator(cfg, std::move(procs));
    out.quiescent = simulator.run() == sim::RunStatus::Quiescent;
    for (PartyId p = 1; p <= n; ++p) {
        auto *inst = instances[p - 1].get();
        if (!inst) continue;
        if constexpr (std::is_same_v<Instance, TcvBa>) {
            out.rounds[p] = inst->decision_round();
            out.violations += inst->precondition_violations();
        } else {
            out.rounds[p] = inst->binary().decision_round();
            out.violations += inst->binary().precondition_violations();
        }
    }
    return out;
}

} // namespace

AgreementOutcome run_tcv(std::uint32_t n, std::uint32_t f, std::uint64_t seed, const std::vector<std::uint64_t> &inputs,
                         const std::vector<PartyId> &byzantine, sim::DelayModel delay) {
    const sim::InstanceTag tag{1, sim::Proto::Tcv, 0};
    return run_agreement<TcvBa>(n, f, seed, inputs, byzantine, std::move(delay), tag,
                                [tag](protocol::Setup &setup, PartyId p, TcvBa::DecideFn fn) {
                                    return std::make_unique<TcvBa>(setup.pub, setup.parties[p - 1].sig, tag,
                                                                   std::move(fn));
                                });
}

AgreementOutcome run_blackbox(std::uint32_t n, std::uint32_t f, std::uint64_t seed,
                              const std::vector<std::uint64_t> &inputs, const std::vector<PartyId> &byzantine,
                              sim::DelayModel delay) {
    const sim::InstanceTag inner{1, sim::Proto::Tcv, protocol::TcvBlackbox::kInnerBit};
    return run_agreement<protocol::TcvBlackbox>(
        n, f, seed, inputs, byzantine, std::move(delay), inner,
        [](protocol::Setup &setup, PartyId p, TcvBa::DecideFn fn) {
            return std::make_unique<protocol::TcvBlackbox>(setup.pub, setup.parties[p - 1].sig, 1, 0, std::move(fn));
        });
}

AcsOutcome run_acs(std::uint32_t n, std::uint32_t f, std::uint64_t seed, const std::vector<Bytes> &payloads,
                   const std::vector<PartyId> &crashed, sim::DelayModel delay) {
    auto setup = protocol::make_setup(n, f, seed);
    AcsOutcome out;
    std::vector<std::unique_ptr<protocol::Acs>> instances(n);
    std::vector<std::unique_ptr<sim::Process>> procs;
    sim::SimConfig cfg = quiet_config(n, f, seed, std::move(delay));
    for (PartyId p = 1; p <= n; ++p) {
        instances[p - 1] = std::make_unique<protocol::Acs>(
            setup.pub, setup.parties[p - 1].sig, 1, 0,
            [&out, p](const protocol::Acs::Output &o) { out.outputs[p] = o; });
        auto proc = std::make_unique<LambdaProcess>();
        auto *inst = instances[p - 1].get();
        const Bytes payload = payloads[p - 1];
        proc->start = [inst, payload](sim::Context &ctx) { inst->input(ctx, payload); };
        proc->message = [inst](sim::Context &ctx, const sim::Envelope &env) { inst->handle(ctx, env); };
        procs.push_back(std::move(proc));
        if (contains(crashed, p)) cfg.crashes.push_back({p, 0});
    }
    sim::Simulator simulator(cfg, std::move(procs));
    out.quiescent = simulator.run() == sim::RunStatus::Quiescent;
    for (auto p : crashed) out.outputs.erase(p);
    return out;
}

} // namespace bdt::testing
