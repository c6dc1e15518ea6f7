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
#include <optional>
#include <random>
#include <vector>

#include "bdt/sim/envelope.hpp"

namespace bdt::sim {

/// Adversarial override applied to matching envelopes. Unset fields match
/// anything. `from_leader` matches envelopes whose sender leads the epoch
/// named in the envelope's instance tag.
struct DelayRule {
    std::optional<PartyId> from;
    std::optional<PartyId> to;
    std::optional<Proto> proto;
    std::optional<std::uint8_t> kind;
    bool from_leader = false;
    std::optional<std::uint64_t> epoch_max; // match only epochs <= this
    std::uint64_t extra = 0;
    std::optional<Time> fixed;

    bool matches(const Envelope &env, PartyId leader) const;
    bool operator==(const DelayRule &) const = default;
};

struct DelayModel {
    enum class Kind { Uniform, Jitter };

    Kind kind = Kind::Uniform;
    Time lo = 10; // Uniform uses lo as the fixed delay
    Time hi = 10;
    Time tick = 10;
    std::vector<DelayRule> rules;

    static DelayModel uniform(Time d) { return DelayModel{Kind::Uniform, d, d, d, {}}; }
    static DelayModel jitter(Time lo, Time hi) { return DelayModel{Kind::Jitter, lo, hi, (lo + hi) / 2, {}}; }

    /// Base draw followed by the first matching rule (fixed replaces, extra adds).
    Time draw(const Envelope &env, PartyId leader, std::mt19937_64 &rng) const;
    bool operator==(const DelayModel &) const = default;
};

} // namespace bdt::sim
