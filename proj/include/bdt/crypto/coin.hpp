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

#include <optional>

#include "bdt/crypto/tsig.hpp"

namespace bdt::crypto {

/// Names one coin flip: protocol instance plus round.
struct CoinId {
    std::uint64_t epoch = 0;
    std::uint32_t protocol = 0;
    std::uint64_t instance = 0;
    std::uint64_t round = 0;

    auto operator<=>(const CoinId &) const = default;

    /// Message a party signs to release its share of this coin.
    Bytes share_message() const;
};

/// Simulator-trusted common coin. The value of a coin is the low bit of
/// HMAC-SHA256(dealer secret, id); the oracle reveals it only to a caller that
/// presents f+1 valid release shares from distinct parties.
class CoinOracle {
  public:
    /// `releases` verifies release shares; its threshold is the gate (f+1).
    CoinOracle(std::uint64_t dealer_seed, TsigPublic releases);

    std::uint32_t gate() const { return releases_.threshold(); }

    /// nullopt while fewer than `gate()` distinct valid shares are presented.
    std::optional<bool> get(const CoinId &id, std::span<const SigShare> released) const;

    /// Gate on a plain release count (for callers that track releases themselves).
    std::optional<bool> get(const CoinId &id, std::uint32_t release_count) const;

  private:
    bool value(const CoinId &id) const;

    std::array<std::uint8_t, 32> secret_;
    TsigPublic releases_;
};

} // namespace bdt::crypto
