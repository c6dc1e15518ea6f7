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

#include <utility>
#include <vector>

#include "bdt/common/bytes.hpp"

namespace bdt::crypto {

/// One coded fragment together with its 0-based position in the codeword.
struct Fragment {
    std::uint32_t index = 0;
    Bytes data;
};

/// Systematic (k, n) Reed-Solomon code over GF(2^8).
///
/// The payload is prefixed with its byte length (4 bytes, big-endian), padded
/// with zeros to a multiple of k and split into k equal stripes. Fragments
/// 0..k-1 are the stripes themselves; fragments k..n-1 are parity rows of a
/// generator whose every k-row submatrix is invertible, so any k distinct
/// fragments reconstruct the payload exactly.
///
/// Requires 1 <= k <= n <= 255.
std::vector<Bytes> erasure_encode(std::uint32_t k, std::uint32_t n, ByteView data);

/// Reconstructs the payload from at least k fragments with distinct indices.
/// Throws InsufficientFragments when fewer than k distinct indices are given and
/// Malformed when fragments disagree in size or the embedded length is invalid.
/// Corruption is not detected here; callers check fragments against a Merkle root.
Bytes erasure_decode(std::uint32_t k, std::uint32_t n, std::span<const Fragment> fragments);

} // namespace bdt::crypto
