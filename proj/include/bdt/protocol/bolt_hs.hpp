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

#include "bdt/protocol/fastlane.hpp"

namespace bdt::protocol {

/// Stable-leader pipelined multicast fastlane. The leader proposes slot s with
/// the quorum signature of slot s-1; followers vote to the leader only, and
/// deliver slot s-1 when they see its signature inside the slot-s proposal.
/// After the last slot the leader sends a closing proposal that carries the
/// final signature and is not voted on.
class BoltHs final : public Fastlane {
  public:
    enum Kind : std::uint8_t { Proposal = 1, Vote = 2 };

    struct Options {
        /// Byzantine leader: different batches to the two halves of the parties.
        bool equivocate = false;
    };

    BoltHs(std::shared_ptr<const PublicSetup> pub, const crypto::TsigSecretKey &key, std::uint64_t epoch,
           PartyId leader, std::uint64_t esize, BatchSource batches, FastlaneHooks hooks, Options options);
    BoltHs(std::shared_ptr<const PublicSetup> pub, const crypto::TsigSecretKey &key, std::uint64_t epoch,
           PartyId leader, std::uint64_t esize, BatchSource batches, FastlaneHooks hooks)
        : BoltHs(std::move(pub), key, epoch, leader, esize, std::move(batches), std::move(hooks), Options{}) {}

    void start(sim::Context &ctx) override;
    void handle(sim::Context &ctx, const sim::Envelope &env) override;
    void abandon() override { abandoned_ = true; }
    bool abandoned() const override { return abandoned_; }

    /// Highest slot delivered so far (0 if none).
    std::uint64_t delivered() const { return delivered_; }

    static Bytes vote_message(std::uint64_t epoch, std::uint64_t slot, const crypto::Digest &digest);
    static bool verify(const PublicSetup &pub, std::uint64_t epoch, std::uint64_t slot, const QuorumProof &proof);

    static Bytes encode_proposal(std::uint64_t epoch, std::uint64_t slot, const std::vector<Tx> &txs,
                                 const std::optional<crypto::CombinedSig> &sig);
    static Bytes encode_vote(std::uint64_t epoch, std::uint64_t slot, const crypto::SigShare &share);

  private:
    struct PendingProposal {
        std::uint64_t slot = 0;
        std::vector<Tx> txs;
        std::optional<crypto::CombinedSig> sig;
    };

    sim::InstanceTag tag() const { return {epoch_, sim::Proto::Bolt, 0}; }
    bool is_leader() const { return key_.party() == leader_; }
    void propose(sim::Context &ctx, std::uint64_t slot, const std::optional<crypto::CombinedSig> &prev);
    void on_vote(sim::Context &ctx, Reader &r, PartyId from);
    void on_proposal(sim::Context &ctx, Reader &r);
    void drain_proposals(sim::Context &ctx);
    bool accept(sim::Context &ctx, const PendingProposal &p);
    void deliver(std::uint64_t slot, const std::vector<Tx> &txs, const crypto::CombinedSig &sig);

    std::shared_ptr<const PublicSetup> pub_;
    crypto::TsigSecretKey key_;
    std::uint64_t epoch_;
    PartyId leader_;
    std::uint64_t esize_;
    BatchSource batches_;
    FastlaneHooks hooks_;
    Options options_;
    bool abandoned_ = false;

    std::uint64_t accepted_ = 0;  // follower: highest slot voted on or closed
    std::uint64_t delivered_ = 0;
    std::map<std::uint64_t, std::vector<Tx>> txs_; // per slot, as voted (leader: as proposed)
    std::map<std::uint64_t, std::vector<PendingProposal>> pending_;

    // Leader side. Votes are grouped by digest so an equivocating leader cannot
    // mix shares over two batches.
    std::uint64_t proposing_ = 0;
    std::map<crypto::Digest, std::vector<Tx>> candidates_;
    std::map<crypto::Digest, std::vector<crypto::SigShare>> votes_;
};

} // namespace bdt::protocol
