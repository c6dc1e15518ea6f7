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

#include <array>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "bdt/protocol/block.hpp"

namespace bdt::core {

enum class Check {
    Prefix,          // two honest logs diverge
    Revocation,      // a committed entry changed or a log shrank
    Notarizability,  // a proof for slot j while fewer than f+1 honest parties hold j-1
    PaceRange,       // an honest maxpace outside {R-1, R}
    AbandonQuiet,    // a proof above the frozen maximum after tcv activation
    PaceBelowLog,    // agreed pace below an already finalized slot
    Agreement,       // honest logs differ at the end of a quiescent run
};
inline constexpr std::size_t kCheckCount = 7;

const char *to_string(Check c);

struct Violation {
    Check check;
    std::string detail;
};

/// Omniscient observer fed by every node. Safety checks run as events are
/// reported; range and agreement checks run in `finish`.
class Monitor {
  public:
    Monitor(std::uint32_t n, std::uint32_t f, std::vector<bool> honest);

    void on_append(PartyId p, std::size_t index, const protocol::Block &b);
    void on_fastlane_deliver(PartyId p, std::uint64_t epoch, std::uint64_t slot);
    void on_proof(PartyId p, std::uint64_t epoch, std::uint64_t slot);
    void on_tcv_activate(PartyId p, std::uint64_t epoch, std::uint64_t maxpace);
    void on_pace(PartyId p, std::uint64_t epoch, std::uint64_t pace, std::uint64_t finalized_slot);

    /// `logs[p-1]` is party p's final log; agreement is checked over honest parties when `quiescent`.
    void finish(const std::vector<std::vector<protocol::Block>> &logs, bool quiescent);

    bool honest(PartyId p) const { return honest_.at(p - 1); }
    const std::vector<Violation> &violations() const { return violations_; }
    std::uint64_t count(Check c) const { return counts_[static_cast<std::size_t>(c)]; }
    /// Violations of the safety checks proper (prefix, revocation, agreement).
    std::uint64_t safety_count() const;
    std::uint64_t max_proof_slot(std::uint64_t epoch) const;

  private:
    void flag(Check c, std::string detail);

    std::uint32_t n_;
    std::uint32_t f_;
    std::vector<bool> honest_;
    std::vector<crypto::Digest> canonical_;
    std::vector<std::vector<crypto::Digest>> logs_;
    std::set<PartyId> diverged_; // prefix already flagged
    std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint32_t> delivered_; // (epoch, slot) -> honest count
    std::map<std::uint64_t, std::uint64_t> max_proof_;
    std::map<std::uint64_t, std::uint64_t> frozen_; // epoch -> max proof slot at first tcv activation
    std::map<std::uint64_t, std::vector<std::pair<PartyId, std::uint64_t>>> maxpaces_;
    std::vector<Violation> violations_;
    std::array<std::uint64_t, kCheckCount> counts_{};
};

} // namespace bdt::core
