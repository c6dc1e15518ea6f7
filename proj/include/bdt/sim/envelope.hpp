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

#include <compare>
#include <string>

#include "bdt/common/bytes.hpp"

namespace bdt::sim {

using Time = std::uint64_t;

enum class Proto : std::uint8_t {
    Tick = 0,
    Bolt = 1,     // pipelined-multicast fastlane
    Prbc = 2,     // sequential-PRBC fastlane
    PaceSync = 3,
    Tcv = 4,
    Aba = 5,      // binary agreement inside the ACS
    AcsRbc = 6,   // reliable broadcast inside the ACS
    Dec = 7,      // threshold decryption shares
    Help = 8,
    Value = 9,    // black-box tcv construction
    Test = 10,
};

constexpr std::size_t kProtoCount = 11;

const char *to_string(Proto p);

/// Hierarchical instance id: epoch, protocol, and a protocol-specific sub-id
/// (slot for the fastlanes, party index for per-party ACS children).
struct InstanceTag {
    std::uint64_t epoch = 0;
    Proto proto = Proto::Test;
    std::uint64_t sub = 0;

    auto operator<=>(const InstanceTag &) const = default;

    Bytes encode() const;
    std::string str() const;
};

/// Point-to-point message. `from` is stamped by the simulator and cannot be
/// forged by the sending process.
struct Envelope {
    PartyId from = 0;
    PartyId to = 0;
    InstanceTag instance;
    std::uint8_t kind = 0;
    Bytes payload;
    Time send_time = 0;
    std::uint64_t round = 0;
};

} // namespace bdt::sim
