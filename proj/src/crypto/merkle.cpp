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

#include "bdt/crypto/merkle.hpp"

namespace bdt::crypto {

Digest merkle_leaf_digest(ByteView leaf) { return Hasher().update(std::uint8_t{0x00}).update(leaf).finish(); }

Digest merkle_node_digest(const Digest &left, const Digest &right) {
    return Hasher().update(std::uint8_t{0x01}).update(left.view()).update(right.view()).finish();
}

std::size_t merkle_depth(std::size_t leaf_count) {
    std::size_t depth = 0;
    while ((std::size_t{1} << depth) < leaf_count) ++depth;
    return depth;
}

MerkleTree merkle_build(std::span<const Bytes> leaves) {
    if (leaves.empty()) throw Error(ErrorCode::EmptyTree, "merkle_build over zero leaves");

    const std::size_t depth = merkle_depth(leaves.size());
    const std::size_t width = std::size_t{1} << depth;

    // levels[0] is the padded leaf layer, levels[depth] holds the root.
    std::vector<std::vector<Digest>> levels(depth + 1);
    levels[0].reserve(width);
    for (const auto &leaf : leaves) levels[0].push_back(merkle_leaf_digest(leaf));
    while (levels[0].size() < width) levels[0].push_back(levels[0].back());

    for (std::size_t d = 1; d <= depth; ++d) {
        const auto &below = levels[d - 1];
        auto &level = levels[d];
        level.reserve(below.size() / 2);
        for (std::size_t i = 0; i < below.size(); i += 2) level.push_back(merkle_node_digest(below[i], below[i + 1]));
    }

    MerkleTree tree;
    tree.root = levels[depth][0];
    tree.proofs.reserve(leaves.size());
    for (std::size_t i = 0; i < leaves.size(); ++i) {
        MerkleProof proof;
        proof.root = tree.root;
        proof.leaf_index = static_cast<std::uint32_t>(i);
        std::size_t idx = i;
        for (std::size_t d = 0; d < depth; ++d) {
            proof.branch.push_back(levels[d][idx ^ 1]);
            idx >>= 1;
        }
        tree.proofs.push_back(std::move(proof));
    }
    return tree;
}

bool merkle_verify(const Digest &root, ByteView leaf, const MerkleProof &proof, std::size_t leaf_count) {
    if (leaf_count == 0 || proof.leaf_index >= leaf_count) return false;
    if (proof.branch.size() != merkle_depth(leaf_count)) return false;
    return merkle_verify(root, leaf, proof);
}

bool merkle_verify(const Digest &root, ByteView leaf, const MerkleProof &proof) {
    if (proof.branch.size() >= 32 || proof.leaf_index >= (std::uint64_t{1} << proof.branch.size())) return false;
    if (proof.root != root) return false;

    Digest acc = merkle_leaf_digest(leaf);
    std::size_t idx = proof.leaf_index;
    for (const auto &sibling : proof.branch) {
        acc = (idx & 1) ? merkle_node_digest(sibling, acc) : merkle_node_digest(acc, sibling);
        idx >>= 1;
    }
    return acc == root;
}

} // namespace bdt::crypto
