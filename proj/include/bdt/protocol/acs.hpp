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

#include "bdt/protocol/prbc.hpp"
#include "bdt/protocol/tcv_ba.hpp"

namespace bdt::protocol {

/// Asynchronous common subset by the n-broadcasts / n-binary-agreements
/// reduction. Broadcast j runs under tag (epoch, AcsRbc, base + j), agreement
/// j under (epoch, Aba, base + j).
class Acs {
  public:
    using Output = std::vector<std::pair<PartyId, Bytes>>;
    using OutputFn = std::function<void(const Output &)>;

    Acs(std::shared_ptr<const PublicSetup> pub, const crypto::TsigSecretKey &key, std::uint64_t epoch,
        std::uint64_t base, OutputFn on_output);

    void input(sim::Context &ctx, const Bytes &payload);
    /// Accepts AcsRbc and Aba envelopes of this instance.
    void handle(sim::Context &ctx, const sim::Envelope &env);

    bool owns(const sim::InstanceTag &tag) const;
    const std::optional<Output> &output() const { return output_; }
    const TcvBa &aba(PartyId j) const { return *abas_.at(j - 1); }
    const Prbc &rbc(PartyId j) const { return *rbcs_.at(j - 1); }

    /// Byzantine input: disperse two different payloads.
    void set_equivocate(bool on) { equivocate_ = on; }

  private:
    void on_delivered(sim::Context &ctx, PartyId j);
    void on_decided(sim::Context &ctx, PartyId j, std::uint64_t bit);
    void try_output();

    std::shared_ptr<const PublicSetup> pub_;
    crypto::TsigSecretKey key_;
    std::uint64_t epoch_;
    std::uint64_t base_;
    OutputFn on_output_;
    bool equivocate_ = false;

    std::vector<std::unique_ptr<Prbc>> rbcs_;
    std::vector<std::unique_ptr<TcvBa>> abas_;
    std::uint32_t ones_ = 0;
    std::uint32_t decided_ = 0;
    bool zeros_cast_ = false;
    std::optional<Output> output_;
    sim::Context *ctx_ = nullptr;
};

} // namespace bdt::protocol
