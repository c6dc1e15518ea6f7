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

#include <vector>

#include "bdt/crypto/hash.hpp"

namespace bdt::crypto {

/// Sibling path from a leaf up to the root. Leaf digests are hash(0x00 || leaf),
/// interior nodes hash(0x01 || left || right). Trees are padded to a power of two
/// by repeating the last leaf digest.
struct MerkleProof {
    Digest root;
    std::uint32_t leaf_index = 0;
    std::vector<Digest> branch;

    bool operator==(const MerkleProof &) const = default;
};

struct MerkleTree {
    Digest root;
    std::vector<MerkleProof> proofs;
};

Digest merkle_leaf_digest(ByteView leaf);
Digest merkle_node_digest(const Digest &left, const Digest &right);

/// Throws Error(EmptyTree) for an empty leaf list.
MerkleTree merkle_build(std::span<const Bytes> leaves);

/// `leaf_count` is the unpadded number of leaves the tree was built over; it
/// fixes the expected branch length. Returns false on any structural mismatch.
bool merkle_verify(const Digest &root, ByteView leaf, const MerkleProof &proof, std::size_t leaf_count);

/// Verification without knowledge of the leaf count: the leaf index must be
/// addressable by the branch and the recomputed root must match.
bool merkle_verify(const Digest &root, ByteView leaf, const MerkleProof &proof);

/// Branch length for a tree over `leaf_count` leaves: ceil(log2(leaf_count)).
std::size_t merkle_depth(std::size_t leaf_count);

} // namespace bdt::crypto
