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
#include <compare>
#include <cstdint>
#include <cstring>
#include <functional>
#include <string>

#include "bdt/common/bytes.hpp"

namespace bdt::crypto {

struct Digest {
    static constexpr std::size_t size = 32;
    std::array<std::uint8_t, size> bytes{};

    auto operator<=>(const Digest &) const = default;

    ByteView view() const { return {bytes.data(), bytes.size()}; }
    std::string hex() const { return to_hex(view()); }
};

/// SHA-256.
Digest hash(ByteView data);
inline Digest hash(const Bytes &data) { return hash(ByteView(data)); }

/// Incremental SHA-256 for hashing several fields without concatenating.
class Hasher {
  public:
    Hasher();
    Hasher &update(ByteView data);
    Hasher &update(std::uint8_t b) { return update(ByteView(&b, 1)); }
    Hasher &update_u64(std::uint64_t v);
    Digest finish();

  private:
    alignas(16) std::array<std::uint8_t, 128> state_;
};

/// Ensures libsodium is initialised; safe to call repeatedly.
void ensure_sodium();

} // namespace bdt::crypto

template <> struct std::hash<bdt::crypto::Digest> {
    std::size_t operator()(const bdt::crypto::Digest &d) const noexcept {
        std::size_t v;
        std::memcpy(&v, d.bytes.data(), sizeof v);
        return v;
    }
};
