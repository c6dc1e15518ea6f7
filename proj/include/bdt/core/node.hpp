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
#include <memory>
#include <random>
#include <set>
#include <unordered_set>

#include "bdt/core/config.hpp"
#include "bdt/core/help.hpp"
#include "bdt/core/monitor.hpp"
#include "bdt/core/tx_buffer.hpp"
#include "bdt/protocol/acs.hpp"
#include "bdt/protocol/tcv_ba.hpp"

namespace bdt::core {

enum class Interrupt { None, Timeout, EpochFull, Censorship, Quorum };
const char *to_string(Interrupt i);

/// What one node did in one epoch.
struct EpochRecord {
    std::uint64_t epoch = 0;
    PartyId leader = 0;
    Interrupt reason = Interrupt::None;
    std::uint64_t sync_slot = 0; // slot announced in PaceSync
    std::optional<std::uint64_t> maxpace;
    std::optional<std::uint64_t> agreed; // tcv output
    std::optional<std::uint64_t> pace;
    std::uint64_t help_gap = 0;
    protocol::Path path = protocol::Path::Fastlane;
    sim::Time start_time = 0;
    std::uint64_t start_round = 0;
    std::optional<sim::Time> acs_output_time;
    std::optional<sim::Time> first_dec_time;
    std::optional<sim::Time> end_time;
};

struct CommitInfo {
    PartyId party;
    const protocol::Block &block;
    std::size_t index;
    protocol::Path path;
    sim::Time time;
    std::uint64_t round;
    std::uint64_t origin_round;
};

class CommitObserver {
  public:
    virtual ~CommitObserver() = default;
    virtual void on_commit(const CommitInfo &info) = 0;
};

struct NodeEnv {
    CoreConfig config;
    std::shared_ptr<const protocol::PublicSetup> pub;
    protocol::PartyKeys keys;
    PartyId self = 0;
    Fault behavior;
    Workload workload;
    Monitor *monitor = nullptr;
    CommitObserver *observer = nullptr;
};

/// One party running epochs of fastlane, pace synchronization and, when the
/// agreed pace is zero, the encrypted common-subset fallback.
class Node final : public sim::Process {
  public:
    explicit Node(NodeEnv env);
    ~Node() override;

    void on_start(sim::Context &ctx) override;
    void on_message(sim::Context &ctx, const sim::Envelope &env) override;
    void on_tick(sim::Context &ctx) override;
    void on_timeout(sim::Context &ctx, sim::TimerId id) override;

    PartyId self() const { return env_.self; }
    const std::vector<protocol::Block> &log() const { return log_; }
    std::uint64_t epoch() const { return current_; }
    bool finished() const { return finished_; }
    const std::vector<EpochRecord> &epochs() const { return records_; }
    const TxBuffer &buffer() const { return buf_; }
    bool committed(protocol::TxId id) const { return committed_.contains(id); }
    std::uint64_t rejected_help_groups() const { return rejected_help_groups_; }

  private:
    enum class Phase { Bolt, Sync, Transformer, Help, Dumbo, Closed };
    struct DumboRound;
    struct EpochState;

    bool is(BehaviorKind k) const { return env_.behavior.kind == k; }
    EpochRecord &record(EpochState &st);

    void ingest();
    void commit(protocol::Block block, protocol::Path path, std::uint64_t origin_round);
    void route(EpochState &st, const sim::Envelope &env);
    void replay_early(EpochState &st);

    void start_epoch(std::uint64_t e);
    std::vector<protocol::Tx> leader_batch(EpochState &st, std::uint64_t slot);
    void on_lane_block(EpochState &st, const protocol::Block &b);
    void interrupt(EpochState &st, Interrupt reason);
    void send_pacesync(EpochState &st, std::uint64_t slot, const std::optional<protocol::QuorumProof> &proof);
    void on_pacesync(EpochState &st, const sim::Envelope &env);
    void enter_transformer(EpochState &st);
    void on_agreed(EpochState &st, std::uint64_t value);
    void close_epoch(EpochState &st);

    void on_help(const sim::Envelope &env);
    void serve_pending();
    bool serve(PartyId to, const HelpRequest &req);

    void start_dumbo_round(EpochState &st, std::uint32_t k);
    void on_acs_output(EpochState &st, DumboRound &round, const protocol::Acs::Output &out);
    void on_dec(EpochState &st, const sim::Envelope &env);
    void try_decrypt(EpochState &st, DumboRound &round, PartyId j, std::optional<PartyId> newest);
    void maybe_finish_round(EpochState &st, DumboRound &round);

    NodeEnv env_;
    sim::Context *ctx_ = nullptr;
    TxBuffer buf_;
    std::vector<protocol::Block> log_;
    std::unordered_set<protocol::TxId> committed_;
    std::map<std::uint64_t, std::vector<std::size_t>> fastlane_index_; // epoch -> log positions by slot
    std::uint64_t next_tx_ = 0;

    std::uint64_t current_ = 0;
    bool finished_ = false;
    std::map<std::uint64_t, std::unique_ptr<EpochState>> states_;
    std::map<std::uint64_t, std::vector<sim::Envelope>> future_;
    std::vector<EpochRecord> records_;

    std::optional<protocol::TxId> head_id_;
    std::uint64_t head_since_ = 0;

    std::vector<std::pair<PartyId, HelpRequest>> pending_help_;
    std::uint64_t rejected_help_groups_ = 0;
    std::mt19937_64 rng_;
};

} // namespace bdt::core
