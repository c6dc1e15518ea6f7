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
#include <deque>
#include <map>
#include <memory>
#include <ostream>
#include <queue>
#include <tuple>

#include "bdt/crypto/hash.hpp"
#include "bdt/sim/delay.hpp"

namespace bdt::sim {

class Simulator;
using TimerId = std::uint32_t;

/// Handle through which a process talks to the network and its clock.
class Context {
  public:
    Context(Simulator &sim, PartyId self) : sim_(&sim), self_(self) {}

    PartyId self() const { return self_; }
    std::uint32_t n() const;
    std::uint32_t f() const;
    Time now() const;
    /// Local time: number of own ticks delivered so far.
    std::uint64_t ticks() const;
    std::uint64_t round() const;

    void send(PartyId to, const InstanceTag &tag, std::uint8_t kind, Bytes payload);
    /// n-1 network envelopes plus an immediate, uncounted local copy.
    void multicast(const InstanceTag &tag, std::uint8_t kind, const Bytes &payload);

    /// Fires on_timeout(id) after `tau` further ticks; starting a running timer resets it.
    void timer_start(TimerId id, std::uint64_t tau);
    /// Zeroes the tick count of a running or expired timer, reusing its tau.
    void timer_restart(TimerId id);
    void timer_stop(TimerId id);
    bool timer_active(TimerId id) const;

    /// Stops the self-tick; timers freeze. Used once a node has nothing left to drive.
    void stop_ticking();

  private:
    Simulator *sim_;
    PartyId self_;
};

class Process {
  public:
    virtual ~Process() = default;
    virtual void on_start(Context &) {}
    virtual void on_message(Context &ctx, const Envelope &env) = 0;
    virtual void on_tick(Context &) {}
    virtual void on_timeout(Context &, TimerId) {}
};

struct CrashSpec {
    PartyId party = 0;
    Time at = 0;
};

struct SimConfig {
    std::uint32_t n = 4;
    std::uint32_t f = 1;
    std::uint64_t seed = 1;
    DelayModel delay = DelayModel::uniform(10);
    std::uint64_t max_events = 1'000'000;
    Time max_time = 0; // 0 = unbounded
    std::vector<CrashSpec> crashes;
    /// Leader of an epoch, for `from_leader` delay rules.
    std::function<PartyId(std::uint64_t)> leader_of;
    /// Optional TSV sink: time, round, from, to, instance, kind, bytes.
    std::ostream *trace = nullptr;

    /// Throws ConfigError unless n >= 3f+1 and crash targets are in range.
    void validate() const;
};

struct Counters {
    std::uint64_t messages = 0;
    std::uint64_t bytes = 0;
    std::array<std::uint64_t, kProtoCount> messages_by_proto{};
    std::array<std::uint64_t, kProtoCount> bytes_by_proto{};
    std::vector<std::uint64_t> bytes_sent_by_party; // index 0 unused
    std::uint64_t lane_leader_bytes = 0;             // fastlane bytes sent by the epoch's leader
};

enum class RunStatus { Quiescent, Horizon };

/// Deterministic discrete-event network. One event at a time, ordered by
/// (delivery time, seeded tiebreak, send sequence).
class Simulator {
  public:
    Simulator(SimConfig config, std::vector<std::unique_ptr<Process>> processes);
    Simulator(const Simulator &) = delete;
    Simulator &operator=(const Simulator &) = delete;

    RunStatus run();

    const SimConfig &config() const { return config_; }
    std::uint32_t n() const { return config_.n; }
    std::uint32_t f() const { return config_.f; }
    Time now() const { return now_; }
    std::uint64_t events() const { return events_; }
    const Counters &counters() const { return counters_; }
    bool crashed(PartyId p) const;
    std::uint64_t node_round(PartyId p) const { return nodes_.at(p - 1).round; }
    std::uint64_t node_ticks(PartyId p) const { return nodes_.at(p - 1).ticks; }
    Process &process(PartyId p) { return *nodes_.at(p - 1).process; }
    std::size_t in_flight() const { return queue_.size(); }
    crypto::Digest trace_digest() const;

  private:
    friend class Context;

    struct Timer {
        std::uint64_t tau = 0;
        std::uint64_t remaining = 0;
        bool active = false;
    };

    struct Node {
        std::unique_ptr<Process> process;
        std::uint64_t ticks = 0;
        std::uint64_t round = 0;
        bool ticking = true;
        bool tick_in_flight = false;
        std::map<TimerId, Timer> timers;
    };

    struct Event {
        Time at;
        std::uint64_t tiebreak;
        std::uint64_t seq;
        Envelope env;
        bool operator>(const Event &o) const {
            return std::tie(at, tiebreak, seq) > std::tie(o.at, o.tiebreak, o.seq);
        }
    };

    void enqueue(Envelope env);
    void schedule_tick(PartyId p);
    void deliver(const Event &ev);
    void drain_local();
    void emit(PartyId from, PartyId to, const InstanceTag &tag, std::uint8_t kind, Bytes payload);
    void trace_line(const Envelope &env);
    Node &node(PartyId p) { return nodes_[p - 1]; }

    SimConfig config_;
    std::vector<Node> nodes_;
    std::vector<Context> contexts_;
    std::priority_queue<Event, std::vector<Event>, std::greater<>> queue_;
    std::deque<Envelope> local_;
    std::mt19937_64 rng_;
    Time now_ = 0;
    std::uint64_t seq_ = 0;
    std::uint64_t events_ = 0;
    Counters counters_;
    crypto::Hasher trace_hash_;
};

} // namespace bdt::sim
