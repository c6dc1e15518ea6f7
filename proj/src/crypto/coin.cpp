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

#include "bdt/crypto/coin.hpp"

#include <sodium.h>

#include <set>

namespace bdt::crypto {

Bytes CoinId::share_message() const {
    Writer w(40);
    w.raw(to_bytes("bdt/coin")).u64(epoch).u32(protocol).u64(instance).u64(round);
    return std::move(w).take();
}

CoinOracle::CoinOracle(std::uint64_t dealer_seed, TsigPublic releases) : releases_(std::move(releases)) {
    secret_ = Hasher().update(to_bytes("bdt/coin/secret")).update_u64(dealer_seed).finish().bytes;
}

bool CoinOracle::value(const CoinId &id) const {
    const Bytes msg = id.share_message();
    std::array<std::uint8_t, crypto_auth_hmacsha256_BYTES> mac;
    crypto_auth_hmacsha256(mac.data(), msg.data(), msg.size(), secret_.data());
    return (mac[0] & 1) != 0;
}

std::optional<bool> CoinOracle::get(const CoinId &id, std::span<const SigShare> released) const {
    const Bytes msg = id.share_message();
    std::set<PartyId> valid;
    for (const auto &s : released)
        if (!valid.contains(s.signer) && releases_.verify_share(msg, s)) valid.insert(s.signer);
    return get(id, static_cast<std::uint32_t>(valid.size()));
}

std::optional<bool> CoinOracle::get(const CoinId &id, std::uint32_t release_count) const {
    if (release_count < gate()) return std::nullopt;
    return value(id);
}

} // namespace bdt::crypto
