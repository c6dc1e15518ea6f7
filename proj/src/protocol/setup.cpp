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

#include "bdt/protocol/setup.hpp"

namespace bdt::protocol {

Setup make_setup(std::uint32_t n, std::uint32_t f, std::uint64_t seed) {
    if (n == 0 || n < 3 * f + 1) throw Error(ErrorCode::ConfigError, "n must be at least 3f+1");
    auto sig = crypto::tsig_setup(n - f, n, seed);
    auto enc = crypto::tpke_setup(f + 1, n, seed);
    auto weak = sig.pub.with_threshold(f + 1);
    auto coin = std::make_shared<const crypto::CoinOracle>(seed, weak);

    Setup setup{std::make_shared<const PublicSetup>(PublicSetup{n, f, sig.pub, weak, coin, enc.pub}), {}};
    for (std::uint32_t i = 0; i < n; ++i) setup.parties.push_back(PartyKeys{sig.secrets[i], enc.secrets[i]});
    return setup;
}

} // namespace bdt::protocol
