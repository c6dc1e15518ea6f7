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

#include "bdt/sim/simulator.hpp"

#include <spdlog/spdlog.h>

#include <sstream>

namespace bdt::sim {
namespace {

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

} // namespace

const char *to_string(Proto p) {
    switch (p) {
    case Proto::Tick: return "tick";
    case Proto::Bolt: return "bolt";
    case Proto::Prbc: return "prbc";
    case Proto::PaceSync: return "pacesync";
    case Proto::Tcv: return "tcv";
    case Proto::Aba: return "aba";
    case Proto::AcsRbc: return "acs_rbc";
    case Proto::Dec: return "dec";
    case Proto::Help: return "help";
    case Proto::Value: return "value";
    case Proto::Test: return "test";
    }
    return "?";
}

Bytes InstanceTag::encode() const {
    Writer w(17);
    w.u64(epoch).u8(static_cast<std::uint8_t>(proto)).u64(sub);
    return std::move(w).take();
}

std::string InstanceTag::str() const {
    return std::to_string(epoch) + "/" + to_string(proto) + "/" + std::to_string(sub);
}

bool DelayRule::matches(const Envelope &env, PartyId leader) const {
    if (from && *from != env.from) return false;
    if (to && *to != env.to) return false;
    if (proto && *proto != env.instance.proto) return false;
    if (kind && *kind != env.kind) return false;
    if (epoch_max && env.instance.epoch > *epoch_max) return false;
    if (from_leader && env.from != leader) return false;
    return true;
}

Time DelayModel::draw(const Envelope &env, PartyId leader, std::mt19937_64 &rng) const {
    Time d = 0;
    if (env.instance.proto == Proto::Tick)
        d = tick;
    else if (kind == Kind::Uniform)
        d = lo;
    else
        d = std::uniform_int_distribution<Time>(lo, hi)(rng);
    for (const auto &rule : rules)
        if (rule.matches(env, leader)) {
            d = rule.fixed ? *rule.fixed : d + rule.extra;
            break;
        }
    return std::max<Time>(d, 1);
}

void SimConfig::validate() const {
    if (n == 0 || n < 3 * f + 1) throw Error(ErrorCode::ConfigError, "n must be at least 3f+1");
    for (const auto &c : crashes)
        if (c.party == 0 || c.party > n) throw Error(ErrorCode::ConfigError, "crash target out of range");
}

std::uint32_t Context::n() const { return sim_->n(); }
std::uint32_t Context::f() const { return sim_->f(); }
Time Context::now() const { return sim_->now_; }
std::uint64_t Context::ticks() const { return sim_->node(self_).ticks; }
std::uint64_t Context::round() const { return sim_->node(self_).round; }

void Context::send(PartyId to, const InstanceTag &tag, std::uint8_t kind, Bytes payload) {
    sim_->emit(self_, to, tag, kind, std::move(payload));
}

void Context::multicast(const InstanceTag &tag, std::uint8_t kind, const Bytes &payload) {
    for (PartyId to = 1; to <= sim_->n(); ++to)
        if (to != self_) sim_->emit(self_, to, tag, kind, payload);
    sim_->emit(self_, self_, tag, kind, payload);
}

void Context::timer_start(TimerId id, std::uint64_t tau) {
    auto &t = sim_->node(self_).timers[id];
    t.tau = std::max<std::uint64_t>(tau, 1);
    t.remaining = t.tau;
    t.active = true;
}

void Context::timer_restart(TimerId id) {
    auto &timers = sim_->node(self_).timers;
    if (auto it = timers.find(id); it != timers.end()) {
        it->second.remaining = it->second.tau;
        it->second.active = true;
    }
}

void Context::timer_stop(TimerId id) {
    auto &timers = sim_->node(self_).timers;
    if (auto it = timers.find(id); it != timers.end()) it->second.active = false;
}

bool Context::timer_active(TimerId id) const {
    const auto &timers = sim_->node(self_).timers;
    auto it = timers.find(id);
    return it != timers.end() && it->second.active;
}

void Context::stop_ticking() { sim_->node(self_).ticking = false; }

Simulator::Simulator(SimConfig config, std::vector<std::unique_ptr<Process>> processes)
    : config_(std::move(config)), rng_(splitmix(config_.seed)) {
    config_.validate();
    if (processes.size() != config_.n) throw Error(ErrorCode::ConfigError, "one process per party required");
    nodes_.resize(config_.n);
    for (PartyId p = 1; p <= config_.n; ++p) {
        node(p).process = std::move(processes[p - 1]);
        contexts_.emplace_back(*this, p);
    }
    counters_.bytes_sent_by_party.assign(config_.n + 1, 0);
    if (config_.trace) *config_.trace << "time\tround\tfrom\tto\tinstance\tkind\tbytes\n";
}

bool Simulator::crashed(PartyId p) const {
    for (const auto &c : config_.crashes)
        if (c.party == p && now_ >= c.at) return true;
    return false;
}

void Simulator::emit(PartyId from, PartyId to, const InstanceTag &tag, std::uint8_t kind, Bytes payload) {
    if (crashed(from) || to == 0 || to > config_.n) return;
    Envelope env{from, to, tag, kind, std::move(payload), now_, 0};
    if (to == from) {
        env.round = node(from).round;
        local_.push_back(std::move(env));
        return;
    }
    env.round = node(from).round + 1;
    const auto proto = static_cast<std::size_t>(tag.proto);
    ++counters_.messages;
    counters_.bytes += env.payload.size();
    ++counters_.messages_by_proto[proto];
    counters_.bytes_by_proto[proto] += env.payload.size();
    counters_.bytes_sent_by_party[from] += env.payload.size();
    if ((tag.proto == Proto::Bolt || tag.proto == Proto::Prbc) && config_.leader_of &&
        config_.leader_of(tag.epoch) == from)
        counters_.lane_leader_bytes += env.payload.size();
    enqueue(std::move(env));
}

void Simulator::enqueue(Envelope env) {
    const PartyId leader = config_.leader_of ? config_.leader_of(env.instance.epoch) : 0;
    const Time at = now_ + config_.delay.draw(env, leader, rng_);
    const std::uint64_t seq = seq_++;
    const std::uint64_t tiebreak = splitmix(config_.seed ^ splitmix(seq) ^ (std::uint64_t{env.from} << 32) ^ env.to);
    queue_.push(Event{at, tiebreak, seq, std::move(env)});
}

void Simulator::schedule_tick(PartyId p) {
    auto &nd = node(p);
    if (!nd.ticking || nd.tick_in_flight || crashed(p)) return;
    nd.tick_in_flight = true;
    enqueue(Envelope{p, p, InstanceTag{0, Proto::Tick, nd.ticks + 1}, 0, {}, now_, nd.round});
}

void Simulator::trace_line(const Envelope &env) {
    std::ostringstream line;
    line << now_ << '\t' << env.round << '\t' << env.from << '\t' << env.to << '\t' << env.instance.str() << '\t'
         << unsigned{env.kind} << '\t' << env.payload.size() << '\n';
    const std::string s = line.str();
    trace_hash_.update(ByteView(reinterpret_cast<const std::uint8_t *>(s.data()), s.size()));
    if (config_.trace) *config_.trace << s;
}

crypto::Digest Simulator::trace_digest() const {
    crypto::Hasher copy = trace_hash_;
    return copy.finish();
}

void Simulator::drain_local() {
    while (!local_.empty()) {
        Envelope env = std::move(local_.front());
        local_.pop_front();
        if (crashed(env.to)) continue;
        node(env.to).process->on_message(contexts_[env.to - 1], env);
    }
}

void Simulator::deliver(const Event &ev) {
    const Envelope &env = ev.env;
    auto &nd = node(env.to);
    auto &ctx = contexts_[env.to - 1];

    if (env.instance.proto == Proto::Tick) {
        nd.tick_in_flight = false;
        if (crashed(env.to) || !nd.ticking) return;
        ++nd.ticks; // the local clock advances; causal rounds do not
        std::vector<TimerId> fired;
        for (auto &[id, t] : nd.timers)
            if (t.active && --t.remaining == 0) {
                t.active = false;
                fired.push_back(id);
            }
        for (auto id : fired) {
            nd.process->on_timeout(ctx, id);
            drain_local();
        }
        nd.process->on_tick(ctx);
        drain_local();
        schedule_tick(env.to);
        return;
    }

    trace_line(env);
    if (crashed(env.to)) return;
    nd.round = std::max(nd.round, env.round);
    nd.process->on_message(ctx, env);
    drain_local();
    schedule_tick(env.to);
}

RunStatus Simulator::run() {
    for (PartyId p = 1; p <= config_.n; ++p) {
        if (!crashed(p)) {
            node(p).process->on_start(contexts_[p - 1]);
            drain_local();
        }
        schedule_tick(p);
    }
    while (!queue_.empty()) {
        if (events_ >= config_.max_events || (config_.max_time && queue_.top().at > config_.max_time)) {
            spdlog::debug("horizon reached after {} events at time {}", events_, now_);
            return RunStatus::Horizon;
        }
        // The heap order depends only on the key fields, so moving the payload out is safe.
        Event ev = std::move(const_cast<Event &>(queue_.top()));
        queue_.pop();
        now_ = ev.at;
        ++events_;
        deliver(ev);
    }
    return RunStatus::Quiescent;
}

} // namespace bdt::sim
