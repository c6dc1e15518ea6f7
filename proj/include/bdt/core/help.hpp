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

#include <map>
#include <set>

#include "bdt/crypto/merkle.hpp"
#include "bdt/protocol/block.hpp"
#include "bdt/protocol/fastlane.hpp"

namespace bdt::core {

/// Block-range state transfer. A lagging node asks for `gap` blocks of epoch
/// `epoch` after slot `tip`; each holder answers with its own coded fragment
/// of the blocks' contents, a Merkle branch, and its proofs for those blocks.
enum HelpKind : std::uint8_t { HelpRequestKind = 1, HelpResponseKind = 2 };

struct HelpRequest {
    std::uint64_t epoch = 0;
    std::uint64_t tip = 0;
    std::uint64_t gap = 0;

    bool operator==(const HelpRequest &) const = default;
    Bytes encode() const;
    static HelpRequest decode(ByteView data);
};

struct HelpResponse {
    HelpRequest request;
    crypto::Digest root;
    std::uint32_t index = 0;
    Bytes fragment;
    std::vector<crypto::Digest> branch;
    std::vector<std::optional<protocol::QuorumProof>> proofs; // one per block

    Bytes encode() const;
    static HelpResponse decode(ByteView data);
};

/// Response from a holder whose log covers the range. `blocks` are exactly
/// slots tip+1 .. tip+gap.
HelpResponse make_help_response(std::uint32_t n, std::uint32_t f, const HelpRequest &request,
                                std::span<const protocol::Block> blocks, PartyId self);

/// The forged response that coordinated garbage helpers all send: a
/// well-formed dispersal of invented blocks, without proofs.
HelpResponse make_garbage_response(std::uint32_t n, std::uint32_t f, const HelpRequest &request, PartyId self,
                                   std::size_t tx_size);

/// Requester side: groups responses by root and accepts the first group with
/// n-2f valid fragments whose decoded blocks match the request and each carry
/// a verifying proof.
class HelpCollector {
  public:
    HelpCollector(std::shared_ptr<const protocol::PublicSetup> pub, protocol::FastlaneKind kind, HelpRequest request);

    std::optional<std::vector<protocol::Block>> add(PartyId from, const HelpResponse &response);

    const HelpRequest &request() const { return request_; }
    bool done() const { return done_; }
    std::uint64_t rejected_responses() const { return rejected_; }
    std::uint64_t rejected_groups() const { return bad_groups_; }

  private:
    struct Group {
        std::map<std::uint32_t, Bytes> fragments;
        std::vector<std::vector<protocol::QuorumProof>> proofs;
        bool bad = false;
    };

    std::optional<std::vector<protocol::Block>> try_group(const crypto::Digest &root, Group &group);

    std::shared_ptr<const protocol::PublicSetup> pub_;
    protocol::FastlaneKind kind_;
    HelpRequest request_;
    std::map<crypto::Digest, Group> groups_;
    std::set<PartyId> seen_;
    bool done_ = false;
    std::uint64_t rejected_ = 0;
    std::uint64_t bad_groups_ = 0;
};

} // namespace bdt::core
