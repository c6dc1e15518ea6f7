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

#include "bdt/core/config.hpp"

#include <cmath>
#include <sstream>

namespace bdt::core {
namespace {

std::uint64_t parse_u64(const std::string &s, const std::string &what) {
    std::size_t used = 0;
    std::uint64_t v = 0;
    try {
        v = std::stoull(s, &used);
    } catch (const std::exception &) {
        used = 0;
    }
    if (used == 0 || used != s.size() || s.front() == '-')
        throw Error(ErrorCode::ConfigError, "bad number '" + s + "' in " + what);
    return v;
}

void require(bool ok, const std::string &what) {
    if (!ok) throw Error(ErrorCode::ConfigError, what);
}

} // namespace

void CoreConfig::validate() const {
    require(n >= 1 && n >= 3 * f + 1, "n must be at least 3f+1");
    require(tau >= 1, "tau must be at least 1");
    require(esize >= 1, "esize must be at least 1");
    require(batch >= 1, "batch must be at least 1");
    require(tx_size >= 8, "tx_size must be at least 8");
    require(dumbo_blocks >= 1, "dumbo_blocks must be at least 1");
    require(epochs >= 1, "epochs must be at least 1");
}

sim::Time Workload::inject_time(std::uint64_t index) const {
    if (rate <= 0) return 0;
    return static_cast<sim::Time>(std::floor(static_cast<double>(index) / rate));
}

const char *to_string(BehaviorKind k) {
    switch (k) {
    case BehaviorKind::Honest: return "honest";
    case BehaviorKind::Crash: return "crash";
    case BehaviorKind::SilentLeader: return "silent_leader";
    case BehaviorKind::GarbageHelper: return "garbage_helper";
    case BehaviorKind::Equivocate: return "equivocate";
    case BehaviorKind::Censor: return "censor";
    case BehaviorKind::Mutant: return "mutant";
    }
    return "?";
}

std::vector<Fault> parse_faults(const std::string &spec) {
    std::vector<Fault> out;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        if (item.empty()) continue;
        const auto colon = item.find(':');
        require(colon != std::string::npos, "fault '" + item + "' needs party:behavior");
        Fault fault;
        fault.party = static_cast<PartyId>(parse_u64(item.substr(0, colon), "fault party"));
        std::string name = item.substr(colon + 1);
        std::string arg;
        if (const auto at = name.find('@'); at != std::string::npos) {
            arg = name.substr(at + 1);
            name = name.substr(0, at);
        }
        bool found = false;
        for (auto k : {BehaviorKind::Honest, BehaviorKind::Crash, BehaviorKind::SilentLeader,
                       BehaviorKind::GarbageHelper, BehaviorKind::Equivocate, BehaviorKind::Censor,
                       BehaviorKind::Mutant})
            if (name == to_string(k)) {
                fault.kind = k;
                found = true;
            }
        require(found, "unknown behavior '" + name + "'");
        switch (fault.kind) {
        case BehaviorKind::Crash:
        case BehaviorKind::Censor:
            require(!arg.empty(), std::string(to_string(fault.kind)) + " needs @value");
            fault.arg = parse_u64(arg, "fault argument");
            break;
        case BehaviorKind::SilentLeader:
            if (!arg.empty()) {
                const auto dash = arg.find('-');
                const auto lo = parse_u64(arg.substr(0, dash), "epoch range");
                const auto hi = dash == std::string::npos ? lo : parse_u64(arg.substr(dash + 1), "epoch range");
                require(lo >= 1 && lo <= hi, "bad epoch range '" + arg + "'");
                for (auto e = lo; e <= hi; ++e) fault.epochs.push_back(e);
            }
            break;
        default: require(arg.empty(), std::string(to_string(fault.kind)) + " takes no argument");
        }
        out.push_back(fault);
    }
    return out;
}

std::string format_faults(const std::vector<Fault> &faults) {
    std::string out;
    for (const auto &fault : faults) {
        if (!out.empty()) out += ',';
        out += std::to_string(fault.party) + ':' + to_string(fault.kind);
        if (fault.kind == BehaviorKind::Crash || fault.kind == BehaviorKind::Censor)
            out += '@' + std::to_string(fault.arg);
        if (fault.kind == BehaviorKind::SilentLeader && !fault.epochs.empty()) {
            out += '@' + std::to_string(fault.epochs.front());
            if (fault.epochs.size() > 1) out += '-' + std::to_string(fault.epochs.back());
        }
    }
    return out;
}

} // namespace bdt::core
