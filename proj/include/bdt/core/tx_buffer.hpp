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

#include <deque>
#include <optional>
#include <unordered_set>

#include "bdt/protocol/block.hpp"

namespace bdt::core {

/// Bounded FIFO of pending transactions with id lookup.
class TxBuffer {
  public:
    explicit TxBuffer(std::size_t capacity) : capacity_(capacity) {}

    /// False when full or already present.
    bool push(protocol::Tx tx);
    /// Drops every buffered tx whose id is in `txs`.
    void remove(const std::vector<protocol::Tx> &txs);

    bool contains(protocol::TxId id) const { return ids_.contains(id); }
    std::size_t size() const { return queue_.size(); }
    bool empty() const { return queue_.empty(); }
    std::optional<protocol::TxId> head() const;
    /// Up to `limit` oldest txs, skipping those `skip` rejects.
    template <class Skip> std::vector<protocol::Tx> front(std::size_t limit, Skip skip) const {
        std::vector<protocol::Tx> out;
        for (const auto &tx : queue_) {
            if (out.size() >= limit) break;
            if (!skip(protocol::tx_id(tx))) out.push_back(tx);
        }
        return out;
    }
    std::vector<protocol::Tx> front(std::size_t limit) const {
        return front(limit, [](protocol::TxId) { return false; });
    }
    std::uint64_t dropped() const { return dropped_; }

  private:
    std::size_t capacity_;
    std::deque<protocol::Tx> queue_;
    std::unordered_set<protocol::TxId> ids_;
    std::uint64_t dropped_ = 0;
};

} // namespace bdt::core
