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

#include <cstdint>
#include <string>
#include <vector>

#include "bdt/protocol/fastlane.hpp"

namespace bdt::core {

/// Per-node protocol parameters. Time-like values are in the node's own ticks.
struct CoreConfig {
    std::uint32_t n = 4;
    std::uint32_t f = 1;
    protocol::FastlaneKind fastlane = protocol::FastlaneKind::Hs;
    std::uint64_t tau = 10;       // fastlane progress timer
    std::uint64_t censor_T = 40;  // age limit of the buffer head; 0 disables
    std::uint64_t esize = 8;      // fastlane slots per epoch
    std::size_t batch = 16;       // B, in transactions
    std::size_t tx_size = 64;
    bool empty_tail = false;      // leader proposes no txs in the last two slots
    std::uint32_t dumbo_blocks = 1;
    bool dumbo_full_batch = false; // select B instead of B/n txs per party
    bool faithful_gap = false;     // gap = pace - 2 - own synced slot
    bool duplicate_shift = true;   // an all-duplicate block still shifts the registers
    std::size_t buf_capacity = 1'000'000;
    std::uint64_t epochs = 3;      // epochs to run before halting
    std::uint64_t seed = 1;

    /// Throws ConfigError naming the offending field.
    void validate() const;
    bool operator==(const CoreConfig &) const = default;
};

/// Round-robin epoch leader, 1-based.
inline PartyId leader_of(std::uint64_t epoch, std::uint32_t n) {
    return static_cast<PartyId>((epoch - 1) % n) + 1;
}

/// Transactions injected into every node's buffer: `count` of them, one every
/// `1/rate` time units starting at 0 (rate 0 puts them all at time 0).
struct Workload {
    std::uint64_t count = 200;
    double rate = 0;

    sim::Time inject_time(std::uint64_t index) const;
    bool operator==(const Workload &) const = default;
};

enum class BehaviorKind { Honest, Crash, SilentLeader, GarbageHelper, Equivocate, Censor, Mutant };

const char *to_string(BehaviorKind k);

/// One fault-script entry. `arg` is the crash time, the censored tx id, or
/// unused; `epochs` limits SilentLeader (empty means always).
struct Fault {
    PartyId party = 0;
    BehaviorKind kind = BehaviorKind::Honest;
    std::uint64_t arg = 0;
    std::vector<std::uint64_t> epochs;

    bool operator==(const Fault &) const = default;
};

/// Comma-separated `party:name[@arg]` entries, e.g. `1:crash@0,3:garbage_helper`,
/// `2:silent_leader@1-2`, `1:censor@7`. Throws ConfigError.
std::vector<Fault> parse_faults(const std::string &spec);
std::string format_faults(const std::vector<Fault> &faults);

} // namespace bdt::core
