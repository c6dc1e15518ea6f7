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

#include "bdt/protocol/block.hpp"
#include "bdt/protocol/setup.hpp"
#include "bdt/sim/simulator.hpp"

namespace bdt::protocol {

enum class FastlaneKind : std::uint8_t { Hs, Rbc, Timeout };

const char *to_string(FastlaneKind k);

/// Callbacks from a fastlane instance to its host.
struct FastlaneHooks {
    std::function<void(const Block &)> deliver;
    /// A proof for `slot` was formed or verified at this party.
    std::function<void(std::uint64_t slot)> proof_seen;
    /// The party first saw the content proposed for `slot`.
    std::function<void(std::uint64_t slot)> first_seen;
};

/// Leader's batch for a slot.
using BatchSource = std::function<std::vector<Tx>(std::uint64_t slot)>;

/// Stateless proof check for either fastlane. For the multicast fastlane the
/// proof also binds the transactions through its digest.
bool fastlane_verify(FastlaneKind kind, const PublicSetup &pub, std::uint64_t epoch, std::uint64_t slot,
                     const QuorumProof &proof);

/// Common surface of both fastlanes as seen by the epoch driver.
class Fastlane {
  public:
    virtual ~Fastlane() = default;
    virtual void start(sim::Context &ctx) = 0;
    virtual void handle(sim::Context &ctx, const sim::Envelope &env) = 0;
    virtual void abandon() = 0;
    virtual bool abandoned() const = 0;
};

} // namespace bdt::protocol
