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

#include <memory>

#include "bdt/crypto/coin.hpp"
#include "bdt/crypto/tpke.hpp"
#include "bdt/crypto/tsig.hpp"

namespace bdt::protocol {

/// Public material shared by every party of one simulated system.
struct PublicSetup {
    std::uint32_t n = 0;
    std::uint32_t f = 0;
    crypto::TsigPublic quorum; // n - f shares
    crypto::TsigPublic weak;   // f + 1 shares, same keys
    std::shared_ptr<const crypto::CoinOracle> coin;
    crypto::TpkePublic tpke;

    std::uint32_t quorum_size() const { return n - f; }
    std::uint32_t weak_size() const { return f + 1; }
    /// Data shards of the dispersal code.
    std::uint32_t data_shards() const { return n - 2 * f; }
};

struct PartyKeys {
    crypto::TsigSecretKey sig;
    crypto::TpkeSecretKey dec;
};

struct Setup {
    std::shared_ptr<const PublicSetup> pub;
    std::vector<PartyKeys> parties; // parties[i] belongs to party i + 1
};

/// Seeded dealer for all threshold material. Throws ConfigError unless n >= 3f+1.
Setup make_setup(std::uint32_t n, std::uint32_t f, std::uint64_t seed);

} // namespace bdt::protocol
