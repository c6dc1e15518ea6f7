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

#include "bdt/core/node.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>

#include "bdt/protocol/bolt_hs.hpp"
#include "bdt/protocol/bolt_rbc.hpp"

namespace bdt::core {

using protocol::Block;
using protocol::Path;
using protocol::Tx;
using protocol::TxId;

namespace {

constexpr sim::TimerId kFastlaneTimer = 1;
constexpr std::uint8_t kPaceSync = 1;
constexpr std::uint8_t kDecShare = 1;

std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    std::uint64_t x = a * 0x9e3779b97f4a7c15ull ^ (b + 0x632be59bd9b4e019ull + (a << 6) + (a >> 2));
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// All size-t subsets of `items` that contain `must` (any subset when unset).
template <class T, class Fn>
bool for_each_subset(const std::vector<T> &items, std::size_t t, std::optional<std::size_t> must, Fn fn) {
    std::vector<std::size_t> idx(t);
    std::vector<T> pick(t);
    std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
        if (depth == t) {
            if (must && std::find(idx.begin(), idx.end(), *must) == idx.end()) return false;
            for (std::size_t i = 0; i < t; ++i) pick[i] = items[idx[i]];
            return fn(pick);
        }
        for (std::size_t i = start; i + (t - depth) <= items.size(); ++i) {
            idx[depth] = i;
            if (rec(i + 1, depth + 1)) return true;
        }
        return false;
    };
    return rec(0, 0);
}

} // namespace

const char *to_string(Interrupt i) {
    switch (i) {
    case Interrupt::None: return "none";
    case Interrupt::Timeout: return "timeout";
    case Interrupt::EpochFull: return "epoch_full";
    case Interrupt::Censorship: return "censorship";
    case Interrupt::Quorum: return "quorum";
    }
    return "?";
}

struct Node::DumboRound {
    std::uint32_t k = 0;
    std::unique_ptr<protocol::Acs> acs;
    bool output = false;
    bool done = false;
    std::vector<PartyId> members;
    std::map<PartyId, crypto::Ciphertext> cts;
    std::map<PartyId, std::map<PartyId, crypto::DecShare>> shares;
    std::map<PartyId, std::optional<std::vector<Tx>>> resolved;
};

struct Node::EpochState {
    std::uint64_t e = 0;
    PartyId leader = 0;
    std::size_t record = 0;
    Phase phase = Phase::Bolt;
    std::unique_ptr<protocol::Fastlane> lane;
    std::optional<Block> one, two; // 1-notarized and 2-notarized registers
    std::uint64_t finalized_slot = 0;
    std::set<TxId> proposed;
    std::map<std::uint64_t, std::uint64_t> first_seen_round;
    std::map<PartyId, std::uint64_t> sync; // valid PaceSync slots by sender
    std::unique_ptr<protocol::TcvBa> tcv;
    std::vector<std::unique_ptr<DumboRound>> dumbo;
    std::unique_ptr<HelpCollector> help;
    std::vector<sim::Envelope> early; // traffic for parts not yet running

    std::uint64_t origin(std::uint64_t slot, std::uint64_t fallback) const {
        const auto it = first_seen_round.find(slot);
        return it == first_seen_round.end() ? fallback : it->second;
    }
};

Node::Node(NodeEnv env)
    : env_(std::move(env)), buf_(env_.config.buf_capacity), rng_(mix(env_.config.seed, env_.self)) {
    env_.config.validate();
}

Node::~Node() = default;

EpochRecord &Node::record(EpochState &st) { return records_.at(st.record); }

void Node::on_start(sim::Context &ctx) {
    ctx_ = &ctx;
    ingest();
    start_epoch(1);
}

void Node::ingest() {
    const auto now = ctx_->now();
    while (next_tx_ < env_.workload.count && env_.workload.inject_time(next_tx_) <= now) {
        const TxId id = ++next_tx_;
        if (!committed_.contains(id)) buf_.push(protocol::make_tx(id, env_.config.tx_size));
    }
}

void Node::commit(Block block, Path path, std::uint64_t origin_round) {
    const std::size_t index = log_.size();
    for (const auto &tx : block.txs) committed_.insert(protocol::tx_id(tx));
    buf_.remove(block.txs);
    if (path == Path::Fastlane) {
        auto &positions = fastlane_index_[block.epoch];
        positions.push_back(index);
        if (auto it = states_.find(block.epoch); it != states_.end())
            it->second->finalized_slot = std::max(it->second->finalized_slot, block.slot);
    }
    log_.push_back(std::move(block));
    const Block &b = log_.back();
    if (env_.monitor) env_.monitor->on_append(env_.self, index, b);
    if (env_.observer)
        env_.observer->on_commit(CommitInfo{env_.self, b, index, path, ctx_->now(), ctx_->round(), origin_round});
    if (path == Path::Fastlane) serve_pending();
}

// ---------------------------------------------------------------- routing

void Node::on_message(sim::Context &ctx, const sim::Envelope &env) {
    ctx_ = &ctx;
    ingest();
    if (env.instance.proto == sim::Proto::Help) {
        on_help(env);
        return;
    }
    const auto e = env.instance.epoch;
    if (e > current_) {
        future_[e].push_back(env);
        return;
    }
    if (auto it = states_.find(e); it != states_.end()) route(*it->second, env);
}

void Node::route(EpochState &st, const sim::Envelope &env) {
    const auto n = env_.config.n;
    switch (env.instance.proto) {
    case sim::Proto::Bolt:
    case sim::Proto::Prbc:
        if (st.lane) st.lane->handle(*ctx_, env);
        break;
    case sim::Proto::PaceSync: on_pacesync(st, env); break;
    case sim::Proto::Tcv:
        if (st.tcv)
            st.tcv->handle(*ctx_, env);
        else
            st.early.push_back(env);
        break;
    case sim::Proto::Aba:
    case sim::Proto::AcsRbc:
    case sim::Proto::Dec: {
        if (env.instance.sub == 0) break;
        const auto k = (env.instance.sub - 1) / n;
        if (k >= env_.config.dumbo_blocks) break;
        if (k >= st.dumbo.size()) {
            st.early.push_back(env);
            break;
        }
        if (env.instance.proto == sim::Proto::Dec)
            on_dec(st, env);
        else
            st.dumbo[k]->acs->handle(*ctx_, env);
        break;
    }
    default: break;
    }
}

void Node::replay_early(EpochState &st) {
    std::vector<sim::Envelope> waiting;
    waiting.swap(st.early);
    for (const auto &env : waiting) route(st, env);
}

// ---------------------------------------------------------------- fastlane phase

void Node::start_epoch(std::uint64_t e) {
    current_ = e;
    auto owned = std::make_unique<EpochState>();
    auto &st = *owned;
    states_.emplace(e, std::move(owned));
    st.e = e;
    st.leader = leader_of(e, env_.config.n);
    st.record = records_.size();
    records_.push_back(EpochRecord{});
    auto &rec = records_.back();
    rec.epoch = e;
    rec.leader = st.leader;
    rec.start_time = ctx_->now();
    rec.start_round = ctx_->round();

    const auto kind = env_.config.fastlane;
    if (kind != protocol::FastlaneKind::Timeout) {
        protocol::FastlaneHooks hooks;
        hooks.deliver = [this, &st](const Block &b) { on_lane_block(st, b); };
        hooks.proof_seen = [this, e](std::uint64_t slot) {
            if (env_.monitor) env_.monitor->on_proof(env_.self, e, slot);
        };
        hooks.first_seen = [this, &st](std::uint64_t slot) { st.first_seen_round.try_emplace(slot, ctx_->round()); };
        protocol::BatchSource batches = [this, &st](std::uint64_t slot) { return leader_batch(st, slot); };
        const bool equivocate = is(BehaviorKind::Equivocate) && env_.self == st.leader;
        if (kind == protocol::FastlaneKind::Hs)
            st.lane = std::make_unique<protocol::BoltHs>(env_.pub, env_.keys.sig, e, st.leader, env_.config.esize,
                                                         std::move(batches), std::move(hooks),
                                                         protocol::BoltHs::Options{equivocate});
        else
            st.lane = std::make_unique<protocol::BoltRbc>(env_.pub, env_.keys.sig, e, st.leader, env_.config.esize,
                                                          std::move(batches), std::move(hooks),
                                                          protocol::BoltRbc::Options{equivocate});
    }

    ctx_->timer_start(kFastlaneTimer, env_.config.tau);
    head_id_ = buf_.head();
    head_since_ = ctx_->ticks();

    const auto &silent = env_.behavior.epochs;
    const bool muted = is(BehaviorKind::SilentLeader) && env_.self == st.leader &&
                       (silent.empty() || std::find(silent.begin(), silent.end(), e) != silent.end());
    if (st.lane && !muted) st.lane->start(*ctx_);

    if (auto it = future_.find(e); it != future_.end()) {
        auto waiting = std::move(it->second);
        future_.erase(it);
        for (const auto &env : waiting) route(st, env);
    }
}

std::vector<Tx> Node::leader_batch(EpochState &st, std::uint64_t slot) {
    const auto esize = env_.config.esize;
    if (env_.config.empty_tail && slot + 2 > esize) return {};
    const bool censor = is(BehaviorKind::Censor);
    auto txs = buf_.front(env_.config.batch, [&](TxId id) {
        return st.proposed.contains(id) || (censor && id == env_.behavior.arg);
    });
    for (const auto &tx : txs) st.proposed.insert(protocol::tx_id(tx));
    return txs;
}

void Node::on_lane_block(EpochState &st, const Block &b) {
    if (env_.monitor) env_.monitor->on_fastlane_deliver(env_.self, st.e, b.slot);
    if (st.phase != Phase::Bolt) return;
    if (env_.config.duplicate_shift) {
        const auto expected = (st.one ? st.one->slot : st.finalized_slot) + 1;
        if (b.slot != expected)
            throw std::logic_error("fastlane delivered slot " + std::to_string(b.slot) + ", expected " +
                                   std::to_string(expected));
    }
    const auto in_registers = [&](TxId id) {
        for (const auto *reg : {&st.one, &st.two})
            if (*reg)
                for (const auto &tx : (*reg)->txs)
                    if (protocol::tx_id(tx) == id) return true;
        return false;
    };
    const bool fresh = std::any_of(b.txs.begin(), b.txs.end(), [&](const Tx &tx) {
        const auto id = protocol::tx_id(tx);
        return !committed_.contains(id) && !in_registers(id);
    });
    if (fresh) ctx_->timer_restart(kFastlaneTimer);
    if (fresh || env_.config.duplicate_shift) {
        if (st.two) commit(std::move(*st.two), Path::Fastlane, st.origin(st.two->slot, record(st).start_round));
        st.two = std::move(st.one);
        st.one = b;
    }
    if (b.slot >= env_.config.esize) interrupt(st, Interrupt::EpochFull);
}

void Node::interrupt(EpochState &st, Interrupt reason) {
    if (st.phase != Phase::Bolt) return;
    st.phase = Phase::Sync;
    if (st.lane) st.lane->abandon();
    ctx_->timer_stop(kFastlaneTimer);
    auto &rec = record(st);
    rec.reason = reason;
    rec.sync_slot = st.one ? st.one->slot : 0;
    if (is(BehaviorKind::Equivocate) && st.one) {
        // A claim one slot beyond what the proof covers; receivers must drop it.
        send_pacesync(st, st.one->slot + 1, st.one->proof);
    }
    send_pacesync(st, rec.sync_slot, st.one ? st.one->proof : std::nullopt);
}

void Node::send_pacesync(EpochState &st, std::uint64_t slot, const std::optional<protocol::QuorumProof> &proof) {
    Writer w;
    w.u8(kPaceSync).u64(st.e).u64(slot);
    protocol::write_proof(w, proof);
    ctx_->multicast({st.e, sim::Proto::PaceSync, 0}, kPaceSync, w.bytes());
}

void Node::on_pacesync(EpochState &st, const sim::Envelope &env) {
    if (st.sync.contains(env.from)) return;
    std::uint64_t slot = 0;
    std::optional<protocol::QuorumProof> proof;
    try {
        Reader r(env.payload);
        if (r.u8() != kPaceSync || r.u64() != st.e) return;
        slot = r.u64();
        proof = protocol::read_proof(r);
        r.expect_done();
    } catch (const Error &) {
        return;
    }
    const bool valid = slot == 0 ? !proof
                                 : proof && slot <= env_.config.esize &&
                                       env_.config.fastlane != protocol::FastlaneKind::Timeout &&
                                       protocol::fastlane_verify(env_.config.fastlane, *env_.pub, st.e, slot, *proof);
    if (!valid) {
        spdlog::debug("party {}: dropped invalid PaceSync from {} for slot {}", env_.self, env.from, slot);
        return;
    }
    st.sync.emplace(env.from, slot);
    if (st.sync.size() < env_.pub->quorum_size()) return;
    if (st.phase == Phase::Bolt) interrupt(st, Interrupt::Quorum);
    if (st.phase == Phase::Sync) enter_transformer(st);
}

// ---------------------------------------------------------------- transformer

void Node::enter_transformer(EpochState &st) {
    st.phase = Phase::Transformer;
    std::uint64_t maxpace = 0;
    for (const auto &[p, slot] : st.sync) maxpace = std::max(maxpace, slot);
    record(st).maxpace = maxpace;
    if (env_.monitor) env_.monitor->on_tcv_activate(env_.self, st.e, maxpace);
    st.tcv = std::make_unique<protocol::TcvBa>(env_.pub, env_.keys.sig, sim::InstanceTag{st.e, sim::Proto::Tcv, 0},
                                               [this, &st](std::uint64_t v) { on_agreed(st, v); });
    st.tcv->input(*ctx_, maxpace);
    replay_early(st);
}

void Node::on_agreed(EpochState &st, std::uint64_t value) {
    if (st.phase != Phase::Transformer) return;
    const std::uint64_t pace = value == 0 ? 0 : value - 1;
    auto &rec = record(st);
    rec.agreed = value;
    rec.pace = pace;
    if (env_.monitor) env_.monitor->on_pace(env_.self, st.e, pace, st.finalized_slot);

    if (pace == 0) {
        st.phase = Phase::Dumbo;
        rec.path = Path::Fallback;
        st.one.reset();
        st.two.reset();
        start_dumbo_round(st, 0);
        return;
    }
    for (auto *reg : {&st.two, &st.one})
        if (*reg && (*reg)->slot <= pace && (*reg)->slot > st.finalized_slot) {
            const auto slot = (*reg)->slot;
            commit(std::move(**reg), Path::Fastlane, st.origin(slot, rec.start_round));
        }
    st.one.reset();
    st.two.reset();

    const std::uint64_t tip = st.finalized_slot;
    std::uint64_t gap = pace > tip ? pace - tip : 0;
    if (env_.config.faithful_gap) gap = pace >= 2 + rec.sync_slot ? pace - 2 - rec.sync_slot : 0;
    if (gap == 0) {
        close_epoch(st);
        return;
    }
    st.phase = Phase::Help;
    rec.help_gap = gap;
    const HelpRequest req{st.e, tip, gap};
    st.help = std::make_unique<HelpCollector>(env_.pub, env_.config.fastlane, req);
    ctx_->multicast({st.e, sim::Proto::Help, 0}, HelpRequestKind, req.encode());
}

void Node::close_epoch(EpochState &st) {
    st.phase = Phase::Closed;
    record(st).end_time = ctx_->now();
    if (is(BehaviorKind::Mutant) && st.e == 1) {
        // Test fixture: commits a block nobody else has.
        commit(Block{st.e, 1'000'000, {protocol::make_tx(0xDEAD000000000000ull, env_.config.tx_size)}, {}},
               Path::Fallback, ctx_->round());
    }
    if (st.e >= env_.config.epochs) {
        finished_ = true;
        ctx_->timer_stop(kFastlaneTimer);
        ctx_->stop_ticking();
        return;
    }
    start_epoch(st.e + 1);
}

// ---------------------------------------------------------------- help

void Node::on_help(const sim::Envelope &env) {
    if (env.from == env_.self || env.payload.empty()) return;
    try {
        if (env.payload[0] == HelpRequestKind) {
            const auto req = HelpRequest::decode(env.payload);
            if (req.gap < 1 || req.gap > env_.config.esize || req.epoch != env.instance.epoch) return;
            if (is(BehaviorKind::GarbageHelper)) {
                const auto resp = make_garbage_response(env_.config.n, env_.config.f, req, env_.self,
                                                        env_.config.tx_size);
                ctx_->send(env.from, {req.epoch, sim::Proto::Help, 0}, HelpResponseKind, resp.encode());
                return;
            }
            if (!serve(env.from, req)) pending_help_.emplace_back(env.from, req);
            return;
        }
        const auto resp = HelpResponse::decode(env.payload);
        auto it = states_.find(resp.request.epoch);
        if (it == states_.end() || !it->second->help || it->second->phase != Phase::Help) return;
        auto &st = *it->second;
        const auto before = st.help->rejected_groups();
        auto blocks = st.help->add(env.from, resp);
        rejected_help_groups_ += st.help->rejected_groups() - before;
        if (!blocks) return;
        for (auto &b : *blocks) {
            const auto slot = b.slot;
            commit(std::move(b), Path::Fastlane, st.origin(slot, record(st).start_round));
        }
        close_epoch(st);
    } catch (const Error &) {
    }
}

bool Node::serve(PartyId to, const HelpRequest &req) {
    const auto it = fastlane_index_.find(req.epoch);
    if (it == fastlane_index_.end() || it->second.size() < req.tip + req.gap) return false;
    std::vector<Block> blocks;
    for (std::uint64_t s = req.tip + 1; s <= req.tip + req.gap; ++s) {
        const auto &b = log_[it->second[s - 1]];
        if (b.slot != s) return false;
        blocks.push_back(b);
    }
    const auto resp = make_help_response(env_.config.n, env_.config.f, req, blocks, env_.self);
    ctx_->send(to, {req.epoch, sim::Proto::Help, 0}, HelpResponseKind, resp.encode());
    return true;
}

void Node::serve_pending() {
    std::erase_if(pending_help_, [this](const auto &entry) { return serve(entry.first, entry.second); });
}

// ---------------------------------------------------------------- fallback

void Node::start_dumbo_round(EpochState &st, std::uint32_t k) {
    const auto n = env_.config.n;
    auto owned = std::make_unique<DumboRound>();
    auto &round = *owned;
    round.k = k;
    round.acs = std::make_unique<protocol::Acs>(
        env_.pub, env_.keys.sig, st.e, std::uint64_t{k} * n,
        [this, &st, &round](const protocol::Acs::Output &out) { on_acs_output(st, round, out); });
    if (is(BehaviorKind::Equivocate)) round.acs->set_equivocate(true);
    st.dumbo.push_back(std::move(owned));

    // A random selection from the oldest B transactions, kept in buffer order.
    const std::size_t batch = env_.config.batch;
    auto candidates = buf_.front(batch);
    const std::size_t want =
        env_.config.dumbo_full_batch ? batch : std::max<std::size_t>(batch / n, 1);
    std::vector<std::size_t> order(candidates.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::mt19937_64 pick(mix(mix(env_.config.seed, env_.self), mix(st.e, k)));
    std::shuffle(order.begin(), order.end(), pick);
    order.resize(std::min(want, order.size()));
    std::sort(order.begin(), order.end());
    std::vector<Tx> selected;
    for (auto i : order) selected.push_back(candidates[i]);

    Writer plain;
    protocol::write_txs(plain, selected);
    Bytes randomness(32);
    for (auto &b : randomness) b = static_cast<std::uint8_t>(rng_());
    const Bytes label = sim::InstanceTag{st.e, sim::Proto::Dec, std::uint64_t{k} * n + env_.self}.encode();
    const auto ct = crypto::tpke_enc(env_.pub->tpke, label, plain.bytes(), randomness);
    round.acs->input(*ctx_, ct.serialize());
    replay_early(st);
}

void Node::on_acs_output(EpochState &st, DumboRound &round, const protocol::Acs::Output &out) {
    if (round.output) return;
    round.output = true;
    auto &rec = record(st);
    if (!rec.acs_output_time) rec.acs_output_time = ctx_->now();
    const auto n = env_.config.n;
    for (const auto &[j, bytes] : out) {
        round.members.push_back(j);
        const auto sub = std::uint64_t{round.k} * n + j;
        try {
            auto ct = crypto::Ciphertext::deserialize(bytes);
            if (ct.label != sim::InstanceTag{st.e, sim::Proto::Dec, sub}.encode())
                throw Error(ErrorCode::MalformedCiphertext, "label does not name this slot");
            const auto share = env_.keys.dec.dec_share(ct);
            round.cts.emplace(j, std::move(ct));
            Writer w(37);
            w.u8(kDecShare).u32(share.party).raw(share.value);
            if (!rec.first_dec_time) rec.first_dec_time = ctx_->now();
            ctx_->multicast({st.e, sim::Proto::Dec, sub}, kDecShare, w.bytes());
        } catch (const Error &e) {
            spdlog::warn("party {}: epoch {} element {} skipped: {}", env_.self, st.e, j, e.what());
            round.resolved.emplace(j, std::nullopt);
        }
    }
    for (const auto &[j, ct] : round.cts) try_decrypt(st, round, j, std::nullopt);
    maybe_finish_round(st, round);
}

void Node::on_dec(EpochState &st, const sim::Envelope &env) {
    const auto n = env_.config.n;
    auto &round = *st.dumbo[(env.instance.sub - 1) / n];
    const auto j = static_cast<PartyId>(env.instance.sub - std::uint64_t{round.k} * n);
    crypto::DecShare share;
    try {
        Reader r(env.payload);
        if (r.u8() != kDecShare) return;
        share.party = r.u32();
        const auto raw = r.raw(share.value.size());
        std::copy(raw.begin(), raw.end(), share.value.begin());
        r.expect_done();
    } catch (const Error &) {
        return;
    }
    if (share.party != env.from) return;
    if (!round.shares[j].emplace(env.from, share).second) return;
    if (round.output && round.cts.contains(j) && !round.resolved.contains(j)) {
        try_decrypt(st, round, j, env.from);
        maybe_finish_round(st, round);
    }
}

void Node::try_decrypt(EpochState &st, DumboRound &round, PartyId j, std::optional<PartyId> newest) {
    if (round.resolved.contains(j)) return;
    const auto &have = round.shares[j];
    const std::size_t t = env_.pub->tpke.threshold;
    if (have.size() < t) return;
    std::vector<crypto::DecShare> shares;
    std::optional<std::size_t> must;
    for (const auto &[p, s] : have) {
        if (newest && p == *newest) must = shares.size();
        shares.push_back(s);
    }
    const auto &ct = round.cts.at(j);
    const bool ok = for_each_subset(shares, t, must, [&](const std::vector<crypto::DecShare> &subset) {
        Bytes plain;
        try {
            plain = crypto::tpke_dec(env_.pub->tpke, ct, subset);
        } catch (const Error &) {
            return false;
        }
        try {
            Reader r(plain);
            auto txs = protocol::read_txs(r);
            r.expect_done();
            round.resolved.emplace(j, std::move(txs));
        } catch (const Error &) {
            spdlog::warn("party {}: epoch {} element {} decrypts to a non-batch", env_.self, st.e, j);
            round.resolved.emplace(j, std::nullopt);
        }
        return true;
    });
    if (!ok && have.size() >= 2 * env_.config.f + 1) {
        spdlog::warn("party {}: epoch {} element {} undecryptable with {} shares", env_.self, st.e, j, have.size());
        round.resolved.emplace(j, std::nullopt);
    }
}

void Node::maybe_finish_round(EpochState &st, DumboRound &round) {
    if (round.done || !round.output) return;
    for (auto j : round.members)
        if (!round.resolved.contains(j)) return;
    round.done = true;
    std::vector<Tx> txs;
    std::set<TxId> seen;
    for (auto j : round.members) {
        const auto &part = round.resolved.at(j);
        if (!part) continue;
        for (const auto &tx : *part) {
            const auto id = protocol::tx_id(tx);
            if (committed_.contains(id) || !seen.insert(id).second) continue;
            txs.push_back(tx);
        }
    }
    commit(Block{st.e, round.k + 1u, std::move(txs), std::nullopt}, Path::Fallback, record(st).start_round);
    if (round.k + 1 < env_.config.dumbo_blocks)
        start_dumbo_round(st, round.k + 1);
    else
        close_epoch(st);
}

// ---------------------------------------------------------------- clock

void Node::on_tick(sim::Context &ctx) {
    ctx_ = &ctx;
    ingest();
    if (finished_) {
        ctx.stop_ticking();
        return;
    }
    auto &st = *states_.at(current_);
    if (st.phase != Phase::Bolt || env_.config.censor_T == 0) return;
    const auto head = buf_.head();
    if (head != head_id_) {
        head_id_ = head;
        head_since_ = ctx.ticks();
    } else if (head && ctx.ticks() - head_since_ >= env_.config.censor_T) {
        interrupt(st, Interrupt::Censorship);
    }
}

void Node::on_timeout(sim::Context &ctx, sim::TimerId id) {
    ctx_ = &ctx;
    ingest();
    if (id != kFastlaneTimer || finished_) return;
    interrupt(*states_.at(current_), Interrupt::Timeout);
}

} // namespace bdt::core
