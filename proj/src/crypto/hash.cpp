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

#include "bdt/crypto/hash.hpp"

#include <sodium.h>

#include <stdexcept>

namespace bdt::crypto {

static_assert(sizeof(crypto_hash_sha256_state) <= 128);

void ensure_sodium() {
    static const bool ok = sodium_init() >= 0;
    if (!ok) throw std::runtime_error("libsodium initialisation failed");
}

Digest hash(ByteView data) {
    Digest d;
    crypto_hash_sha256(d.bytes.data(), data.data(), data.size());
    return d;
}

Hasher::Hasher() {
    crypto_hash_sha256_init(reinterpret_cast<crypto_hash_sha256_state *>(state_.data()));
}

Hasher &Hasher::update(ByteView data) {
    crypto_hash_sha256_update(reinterpret_cast<crypto_hash_sha256_state *>(state_.data()), data.data(),
                              data.size());
    return *this;
}

Hasher &Hasher::update_u64(std::uint64_t v) {
    std::uint8_t b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<std::uint8_t>(v >> (8 * (7 - i)));
    return update(ByteView(b, 8));
}

Digest Hasher::finish() {
    Digest d;
    crypto_hash_sha256_final(reinterpret_cast<crypto_hash_sha256_state *>(state_.data()), d.bytes.data());
    return d;
}

} // namespace bdt::crypto
