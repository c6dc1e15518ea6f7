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

#include "bdt/protocol/fastlane.hpp"
#include "bdt/protocol/prbc.hpp"

namespace bdt::protocol {

/// Sequential-PRBC fastlane: slot s is one PRBC instance with the epoch
/// leader as sender. A party joins slot s only after finalizing slot s-1;
/// earlier traffic for s is held back until then.
class BoltRbc final : public Fastlane {
  public:
    struct Options {
        bool equivocate = false;
    };

    BoltRbc(std::shared_ptr<const PublicSetup> pub, const crypto::TsigSecretKey &key, std::uint64_t epoch,
            PartyId leader, std::uint64_t esize, BatchSource batches, FastlaneHooks hooks, Options options);

    void start(sim::Context &ctx) override;
    void handle(sim::Context &ctx, const sim::Envelope &env) override;
    void abandon() override { abandoned_ = true; }
    bool abandoned() const override { return abandoned_; }

    std::uint64_t delivered() const { return delivered_; }
    const Prbc *instance(std::uint64_t slot) const;

    static bool verify(const PublicSetup &pub, std::uint64_t epoch, std::uint64_t slot, const QuorumProof &proof);

  private:
    void activate(sim::Context &ctx, std::uint64_t slot);
    void on_finalize(sim::Context &ctx, std::uint64_t slot, const crypto::CombinedSig &sig);

    std::shared_ptr<const PublicSetup> pub_;
    crypto::TsigSecretKey key_;
    std::uint64_t epoch_;
    PartyId leader_;
    std::uint64_t esize_;
    BatchSource batches_;
    FastlaneHooks hooks_;
    Options options_;
    bool abandoned_ = false;

    std::uint64_t active_ = 0;
    std::uint64_t delivered_ = 0;
    std::map<std::uint64_t, std::unique_ptr<Prbc>> slots_;
    std::map<std::uint64_t, std::vector<sim::Envelope>> held_;
};

} // namespace bdt::protocol
