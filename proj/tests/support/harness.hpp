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

#include <functional>
#include <map>
#include <optional>

#include "bdt/protocol/acs.hpp"
#include "bdt/protocol/tcv_ba.hpp"
#include "bdt/sim/simulator.hpp"

namespace bdt::testing {

/// Process assembled from callbacks.
struct LambdaProcess : sim::Process {
    std::function<void(sim::Context &)> start;
    std::function<void(sim::Context &, const sim::Envelope &)> message;

    void on_start(sim::Context &ctx) override {
        if (start) start(ctx);
    }
    void on_message(sim::Context &ctx, const sim::Envelope &env) override {
        if (message) message(ctx, env);
    }
    void on_tick(sim::Context &ctx) override { ctx.stop_ticking(); }
};

sim::SimConfig quiet_config(std::uint32_t n, std::uint32_t f, std::uint64_t seed, sim::DelayModel delay);

struct AgreementOutcome {
    std::map<PartyId, std::uint64_t> decisions; // honest parties only
    std::map<PartyId, std::uint64_t> rounds;
    std::uint64_t violations = 0;
    bool quiescent = false;
};

/// One tcv-BA instance. `inputs[i]` is party i+1's input; parties listed in
/// `byzantine` instead send arbitrary values on every round they observe.
AgreementOutcome run_tcv(std::uint32_t n, std::uint32_t f, std::uint64_t seed, const std::vector<std::uint64_t> &inputs,
                         const std::vector<PartyId> &byzantine, sim::DelayModel delay);

/// Same inputs through the announcement + binary agreement construction.
AgreementOutcome run_blackbox(std::uint32_t n, std::uint32_t f, std::uint64_t seed,
                              const std::vector<std::uint64_t> &inputs, const std::vector<PartyId> &byzantine,
                              sim::DelayModel delay);

struct AcsOutcome {
    std::map<PartyId, protocol::Acs::Output> outputs; // honest parties that output
    bool quiescent = false;
};

/// ACS over `payloads[i]` from party i+1. Crashed parties give no input.
AcsOutcome run_acs(std::uint32_t n, std::uint32_t f, std::uint64_t seed, const std::vector<Bytes> &payloads,
                   const std::vector<PartyId> &crashed, sim::DelayModel delay);

} // namespace bdt::testing
