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

#include "bdt/crypto/merkle.hpp"
#include "bdt/protocol/setup.hpp"
#include "bdt/sim/simulator.hpp"

namespace bdt::protocol {

/// Provable reliable broadcast: Merkle-committed (n-2f, n) dispersal with
/// ECHO/READY amplification, followed by a DONE round whose n-f signature
/// shares over the instance id form the completion proof. With `with_done`
/// off it is a plain reliable broadcast.
class Prbc {
  public:
    enum Kind : std::uint8_t { Val = 1, Echo = 2, Ready = 3, Done = 4 };

    struct Hooks {
        std::function<void(const Bytes &)> deliver;
        std::function<void(const crypto::CombinedSig &)> finalize;
    };

    struct Options {
        bool with_done = true;
        /// Byzantine sender: disperses two different payloads to the two halves.
        bool equivocate = false;
    };

    Prbc(std::shared_ptr<const PublicSetup> pub, crypto::TsigSecretKey key, sim::InstanceTag tag, PartyId sender,
         Hooks hooks, Options options);

    void broadcast(sim::Context &ctx, const Bytes &payload);
    void handle(sim::Context &ctx, const sim::Envelope &env);

    const sim::InstanceTag &tag() const { return tag_; }
    bool delivered() const { return payload_.has_value(); }
    const std::optional<Bytes> &payload() const { return payload_; }
    bool finalized() const { return proof_.has_value(); }
    /// Set when a decoded payload did not re-encode to its root: evidence of a faulty sender.
    bool poisoned() const { return poisoned_; }

    static Bytes done_message(const sim::InstanceTag &tag);
    static bool verify(const PublicSetup &pub, const sim::InstanceTag &tag, const crypto::CombinedSig &sig);

  private:
    struct RootState {
        std::map<std::uint32_t, Bytes> fragments;
        std::set<PartyId> echoes;
        std::set<PartyId> readies;
    };

    Bytes encode_fragment(Kind kind, const crypto::Digest &root, std::uint32_t index, const Bytes &fragment,
                          const std::vector<crypto::Digest> &branch) const;
    void send_vals(sim::Context &ctx, const Bytes &payload, PartyId first, PartyId last);
    void on_fragment(sim::Context &ctx, Kind kind, Reader &r, PartyId from);
    void on_ready(sim::Context &ctx, Reader &r, PartyId from);
    void on_done(sim::Context &ctx, Reader &r, PartyId from);
    void send_ready(sim::Context &ctx, const crypto::Digest &root);
    void try_deliver(sim::Context &ctx, const crypto::Digest &root);
    void try_finalize();

    std::shared_ptr<const PublicSetup> pub_;
    crypto::TsigSecretKey key_;
    sim::InstanceTag tag_;
    PartyId sender_;
    Hooks hooks_;
    Options options_;

    bool val_seen_ = false;
    bool echo_sent_ = false;
    bool ready_sent_ = false;
    bool poisoned_ = false;
    std::map<crypto::Digest, RootState> roots_;
    std::optional<Bytes> payload_;
    std::map<PartyId, crypto::SigShare> done_;
    std::optional<crypto::CombinedSig> proof_;
};

} // namespace bdt::protocol
