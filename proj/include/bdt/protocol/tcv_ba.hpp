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

#include <map>
#include <set>

#include "bdt/protocol/setup.hpp"
#include "bdt/sim/simulator.hpp"

namespace bdt::protocol {

/// Agreement on an integer when honest inputs lie in {v, v+1}. Rounds follow
/// the BVAL / AUX / coin pattern of binary agreement; the coin bit s is matched
/// against value parity: a singleton {v} with v%2 == s decides (or halts a
/// party that already decided), a pair {v, v+1} moves the estimate to the
/// member whose parity equals s. With inputs in {0, 1} this is plain binary
/// agreement.
class TcvBa {
  public:
    enum Kind : std::uint8_t { Bval = 1, Aux = 2, CoinShare = 3 };

    using DecideFn = std::function<void(std::uint64_t value)>;

    TcvBa(std::shared_ptr<const PublicSetup> pub, crypto::TsigSecretKey key, sim::InstanceTag tag, DecideFn on_decide);

    void input(sim::Context &ctx, std::uint64_t value);
    void handle(sim::Context &ctx, const sim::Envelope &env);

    bool has_input() const { return est_.has_value(); }
    std::optional<std::uint64_t> decision() const { return decision_; }
    std::uint64_t decision_round() const { return decision_round_; }
    std::uint64_t round() const { return round_; }
    bool halted() const { return halted_; }
    /// Rounds whose agreed set broke the two-consecutive precondition.
    std::uint64_t precondition_violations() const { return violations_; }
    const sim::InstanceTag &tag() const { return tag_; }

    static Bytes encode(Kind kind, std::uint32_t round, std::uint64_t value);

    /// Next estimate from an agreed set and a coin bit: the member whose parity
    /// matches the coin, else the smallest member.
    static std::uint64_t parity_pick(const std::set<std::uint64_t> &agreed, bool coin);
    /// True for a singleton or two consecutive integers.
    static bool well_formed(const std::set<std::uint64_t> &agreed);

  private:
    struct Round {
        std::map<std::uint64_t, std::set<PartyId>> bval;
        std::set<std::uint64_t> bval_sent;
        std::set<std::uint64_t> bin_values;
        std::optional<std::uint64_t> first_bin;
        std::map<PartyId, std::uint64_t> aux;
        bool aux_sent = false;
        std::optional<std::set<std::uint64_t>> agreed;
        std::set<PartyId> coin_shares;
        std::optional<bool> coin;
    };

    crypto::CoinId coin_id(std::uint64_t r) const;
    void send_bval(sim::Context &ctx, std::uint64_t r, std::uint64_t v);
    void on_bval(sim::Context &ctx, std::uint64_t r, std::uint64_t v, PartyId from);
    void on_aux(sim::Context &ctx, std::uint64_t r, std::uint64_t v, PartyId from);
    void on_coin_share(sim::Context &ctx, std::uint64_t r, const crypto::SigShare &share, PartyId from);
    void progress(sim::Context &ctx);
    std::uint64_t next_estimate(const std::set<std::uint64_t> &agreed, bool coin);

    std::shared_ptr<const PublicSetup> pub_;
    crypto::TsigSecretKey key_;
    sim::InstanceTag tag_;
    DecideFn on_decide_;

    std::map<std::uint64_t, Round> rounds_;
    std::uint64_t round_ = 1;
    std::optional<std::uint64_t> est_;
    std::optional<std::uint64_t> decision_;
    std::uint64_t decision_round_ = 0;
    bool halted_ = false;
    std::uint64_t violations_ = 0;
};

/// The alternative construction from one binary agreement: every party
/// announces its value; f+1 matching announcements fix the binary input
/// (the value's parity); the result is the value with f+1 announcements whose
/// parity equals the binary output.
class TcvBlackbox {
  public:
    enum Kind : std::uint8_t { Value = 1 };
    static constexpr std::uint64_t kInnerBit = 1ull << 63;

    TcvBlackbox(std::shared_ptr<const PublicSetup> pub, crypto::TsigSecretKey key, std::uint64_t epoch,
                std::uint64_t sub, TcvBa::DecideFn on_decide);

    void input(sim::Context &ctx, std::uint64_t value);
    /// Accepts both the announcements and the inner agreement's traffic.
    void handle(sim::Context &ctx, const sim::Envelope &env);

    std::optional<std::uint64_t> decision() const { return decision_; }
    const TcvBa &binary() const { return aba_; }

  private:
    void try_input(sim::Context &ctx);
    void try_output();

    std::shared_ptr<const PublicSetup> pub_;
    sim::InstanceTag tag_;
    TcvBa aba_;
    TcvBa::DecideFn on_decide_;
    std::map<PartyId, std::uint64_t> values_;
    std::map<std::uint64_t, std::uint32_t> support_;
    bool sent_ = false;
    std::optional<bool> bit_;
    std::optional<std::uint64_t> decision_;
};

} // namespace bdt::protocol
