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

#include "bdt/core/monitor.hpp"

#include <spdlog/spdlog.h>

namespace bdt::core {

const char *to_string(Check c) {
    switch (c) {
    case Check::Prefix: return "prefix";
    case Check::Revocation: return "revocation";
    case Check::Notarizability: return "notarizability";
    case Check::PaceRange: return "pace_range";
    case Check::AbandonQuiet: return "abandon_quiet";
    case Check::PaceBelowLog: return "pace_below_log";
    case Check::Agreement: return "agreement";
    }
    return "?";
}

Monitor::Monitor(std::uint32_t n, std::uint32_t f, std::vector<bool> honest)
    : n_(n), f_(f), honest_(std::move(honest)), logs_(n) {
    if (honest_.size() != n) throw Error(ErrorCode::ConfigError, "honest mask size must equal n");
}

void Monitor::flag(Check c, std::string detail) {
    spdlog::error("monitor: {} violation: {}", to_string(c), detail);
    ++counts_[static_cast<std::size_t>(c)];
    violations_.push_back({c, std::move(detail)});
}

std::uint64_t Monitor::safety_count() const {
    return count(Check::Prefix) + count(Check::Revocation) + count(Check::Agreement);
}

void Monitor::on_append(PartyId p, std::size_t index, const protocol::Block &b) {
    if (!honest(p)) return;
    auto &log = logs_[p - 1];
    const auto id = b.id();
    if (index != log.size()) {
        flag(Check::Revocation, "party " + std::to_string(p) + " wrote index " + std::to_string(index) +
                                    " with log length " + std::to_string(log.size()));
        if (index < log.size()) log.resize(index);
        else return;
    }
    log.push_back(id);
    if (index < canonical_.size()) {
        if (canonical_[index] != id && diverged_.insert(p).second)
            flag(Check::Prefix, "party " + std::to_string(p) + " index " + std::to_string(index) + " (epoch " +
                                    std::to_string(b.epoch) + ", slot " + std::to_string(b.slot) + ")");
    } else {
        canonical_.push_back(id);
    }
}

void Monitor::on_fastlane_deliver(PartyId p, std::uint64_t epoch, std::uint64_t slot) {
    if (honest(p)) ++delivered_[{epoch, slot}];
}

void Monitor::on_proof(PartyId p, std::uint64_t epoch, std::uint64_t slot) {
    if (slot >= 2) {
        const auto it = delivered_.find({epoch, slot - 1});
        const std::uint32_t holders = it == delivered_.end() ? 0 : it->second;
        if (holders < f_ + 1)
            flag(Check::Notarizability, "proof for epoch " + std::to_string(epoch) + " slot " + std::to_string(slot) +
                                            " seen at party " + std::to_string(p) + " with " +
                                            std::to_string(holders) + " honest holders of the previous slot");
    }
    if (auto fz = frozen_.find(epoch); fz != frozen_.end() && slot > fz->second)
        flag(Check::AbandonQuiet, "proof for epoch " + std::to_string(epoch) + " slot " + std::to_string(slot) +
                                      " after activation froze the maximum at " + std::to_string(fz->second));
    auto &m = max_proof_[epoch];
    m = std::max(m, slot);
}

std::uint64_t Monitor::max_proof_slot(std::uint64_t epoch) const {
    const auto it = max_proof_.find(epoch);
    return it == max_proof_.end() ? 0 : it->second;
}

void Monitor::on_tcv_activate(PartyId p, std::uint64_t epoch, std::uint64_t maxpace) {
    if (!honest(p)) return;
    frozen_.try_emplace(epoch, max_proof_slot(epoch));
    maxpaces_[epoch].emplace_back(p, maxpace);
}

void Monitor::on_pace(PartyId p, std::uint64_t epoch, std::uint64_t pace, std::uint64_t finalized_slot) {
    if (honest(p) && pace < finalized_slot)
        flag(Check::PaceBelowLog, "party " + std::to_string(p) + " epoch " + std::to_string(epoch) + " pace " +
                                      std::to_string(pace) + " below finalized slot " +
                                      std::to_string(finalized_slot));
}

void Monitor::finish(const std::vector<std::vector<protocol::Block>> &logs, bool quiescent) {
    for (const auto &[epoch, entries] : maxpaces_) {
        const auto r = max_proof_slot(epoch);
        const auto low = r == 0 ? 0 : r - 1;
        for (const auto &[p, mp] : entries)
            if (mp != r && mp != low)
                flag(Check::PaceRange, "party " + std::to_string(p) + " epoch " + std::to_string(epoch) + " maxpace " +
                                           std::to_string(mp) + " with R = " + std::to_string(r));
    }
    if (!quiescent) return;
    const std::vector<protocol::Block> *reference = nullptr;
    for (PartyId p = 1; p <= n_; ++p) {
        if (!honest(p)) continue;
        const auto &log = logs.at(p - 1);
        if (!reference) {
            reference = &log;
            continue;
        }
        bool same = log.size() == reference->size();
        for (std::size_t i = 0; same && i < log.size(); ++i) same = log[i].id() == (*reference)[i].id();
        if (!same)
            flag(Check::Agreement, "party " + std::to_string(p) + " ends with " + std::to_string(log.size()) +
                                       " blocks against " + std::to_string(reference->size()));
    }
}

} // namespace bdt::core
