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

#include "bdt/core/help.hpp"

#include <spdlog/spdlog.h>

#include "bdt/crypto/erasure.hpp"
#include "bdt/protocol/setup.hpp"

namespace bdt::core {

using protocol::Block;

Bytes HelpRequest::encode() const {
    Writer w(25);
    w.u8(HelpRequestKind).u64(epoch).u64(tip).u64(gap);
    return std::move(w).take();
}

HelpRequest HelpRequest::decode(ByteView data) {
    Reader r(data);
    if (r.u8() != HelpRequestKind) throw Error(ErrorCode::Malformed, "not a help request");
    HelpRequest req;
    req.epoch = r.u64();
    req.tip = r.u64();
    req.gap = r.u64();
    r.expect_done();
    return req;
}

Bytes HelpResponse::encode() const {
    Writer w;
    w.u8(HelpResponseKind).u64(request.epoch).u64(request.tip).u64(request.gap);
    w.raw(root.view()).u32(index).blob(fragment).u64(branch.size());
    for (const auto &d : branch) w.raw(d.view());
    w.u64(proofs.size());
    for (const auto &p : proofs) protocol::write_proof(w, p);
    return std::move(w).take();
}

namespace {

crypto::Digest read_digest(Reader &r) {
    crypto::Digest d;
    const auto raw = r.raw(crypto::Digest::size);
    std::copy(raw.begin(), raw.end(), d.bytes.begin());
    return d;
}

} // namespace

HelpResponse HelpResponse::decode(ByteView data) {
    Reader r(data);
    if (r.u8() != HelpResponseKind) throw Error(ErrorCode::Malformed, "not a help response");
    HelpResponse resp;
    resp.request.epoch = r.u64();
    resp.request.tip = r.u64();
    resp.request.gap = r.u64();
    resp.root = read_digest(r);
    resp.index = r.u32();
    resp.fragment = r.blob();
    const auto depth = r.count(crypto::Digest::size);
    for (std::uint64_t i = 0; i < depth; ++i) resp.branch.push_back(read_digest(r));
    const auto count = r.count(8);
    for (std::uint64_t i = 0; i < count; ++i) resp.proofs.push_back(protocol::read_proof(r));
    r.expect_done();
    return resp;
}

namespace {

HelpResponse disperse(std::uint32_t n, std::uint32_t f, const HelpRequest &request, std::span<const Block> blocks,
                      PartyId self) {
    const auto fragments = crypto::erasure_encode(n - 2 * f, n, protocol::encode_contents(blocks));
    const auto tree = crypto::merkle_build(fragments);
    HelpResponse resp;
    resp.request = request;
    resp.root = tree.root;
    resp.index = self - 1;
    resp.fragment = fragments[self - 1];
    resp.branch = tree.proofs[self - 1].branch;
    return resp;
}

} // namespace

HelpResponse make_help_response(std::uint32_t n, std::uint32_t f, const HelpRequest &request,
                                std::span<const Block> blocks, PartyId self) {
    auto resp = disperse(n, f, request, blocks, self);
    for (const auto &b : blocks) resp.proofs.push_back(b.proof);
    return resp;
}

HelpResponse make_garbage_response(std::uint32_t n, std::uint32_t f, const HelpRequest &request, PartyId self,
                                   std::size_t tx_size) {
    std::vector<Block> fake;
    for (std::uint64_t s = request.tip + 1; s <= request.tip + request.gap; ++s)
        fake.push_back(Block{request.epoch, s, {protocol::make_tx(0xBAD0000000000000ull + s, tx_size)}, {}});
    auto resp = disperse(n, f, request, fake, self);
    resp.proofs.assign(fake.size(), std::nullopt);
    return resp;
}

HelpCollector::HelpCollector(std::shared_ptr<const protocol::PublicSetup> pub, protocol::FastlaneKind kind,
                             HelpRequest request)
    : pub_(std::move(pub)), kind_(kind), request_(request) {}

std::optional<std::vector<Block>> HelpCollector::add(PartyId from, const HelpResponse &response) {
    if (done_) return std::nullopt;
    const auto reject = [this] {
        ++rejected_;
        return std::nullopt;
    };
    if (response.request != request_ || response.index != from - 1 || from == 0 || from > pub_->n) return reject();
    if (response.proofs.size() != request_.gap) return reject();
    if (!crypto::merkle_verify(response.root, response.fragment,
                               crypto::MerkleProof{response.root, response.index, response.branch}, pub_->n))
        return reject();
    if (!seen_.insert(from).second) return reject();

    auto &group = groups_[response.root];
    if (group.bad) return std::nullopt;
    group.fragments.emplace(response.index, response.fragment);
    group.proofs.resize(request_.gap);
    for (std::size_t i = 0; i < response.proofs.size(); ++i)
        if (response.proofs[i]) group.proofs[i].push_back(*response.proofs[i]);
    if (group.fragments.size() < pub_->data_shards()) return std::nullopt;
    return try_group(response.root, group);
}

std::optional<std::vector<Block>> HelpCollector::try_group(const crypto::Digest &root, Group &group) {
    const auto fail = [&](const char *why) {
        spdlog::warn("help e={} tip={}: discarding response group: {}", request_.epoch, request_.tip, why);
        group.bad = true;
        ++bad_groups_;
        return std::nullopt;
    };
    std::vector<crypto::Fragment> frags;
    for (const auto &[i, data] : group.fragments) frags.push_back({i, data});
    std::vector<Block> blocks;
    try {
        const Bytes contents = crypto::erasure_decode(pub_->data_shards(), pub_->n, frags);
        const auto again = crypto::merkle_build(crypto::erasure_encode(pub_->data_shards(), pub_->n, contents));
        if (again.root != root) return fail("fragments are not a codeword");
        blocks = protocol::decode_contents(contents);
    } catch (const Error &) {
        return fail("undecodable contents");
    }
    if (blocks.size() != request_.gap) return fail("wrong block count");
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        auto &b = blocks[i];
        if (b.epoch != request_.epoch || b.slot != request_.tip + 1 + i) return fail("wrong block range");
        const auto digest = protocol::txs_digest(b.txs);
        for (const auto &proof : group.proofs[i])
            if (proof.digest == digest && protocol::fastlane_verify(kind_, *pub_, b.epoch, b.slot, proof)) {
                b.proof = proof;
                break;
            }
        if (!b.proof) {
            // Proofs travel beside the fragments; more may still arrive.
            if (group.fragments.size() < pub_->n) return std::nullopt;
            return fail("block without a verifying proof");
        }
    }
    done_ = true;
    return blocks;
}

} // namespace bdt::core
