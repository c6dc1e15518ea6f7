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

#include "bdt/core/tx_buffer.hpp"

#include <algorithm>

namespace bdt::core {

bool TxBuffer::push(protocol::Tx tx) {
    const auto id = protocol::tx_id(tx);
    if (ids_.contains(id)) return false;
    if (queue_.size() >= capacity_) {
        ++dropped_;
        return false;
    }
    ids_.insert(id);
    queue_.push_back(std::move(tx));
    return true;
}

void TxBuffer::remove(const std::vector<protocol::Tx> &txs) {
    std::unordered_set<protocol::TxId> gone;
    for (const auto &tx : txs) {
        const auto id = protocol::tx_id(tx);
        if (ids_.erase(id)) gone.insert(id);
    }
    if (gone.empty()) return;
    std::erase_if(queue_, [&gone](const protocol::Tx &tx) { return gone.contains(protocol::tx_id(tx)); });
}

std::optional<protocol::TxId> TxBuffer::head() const {
    if (queue_.empty()) return std::nullopt;
    return protocol::tx_id(queue_.front());
}

} // namespace bdt::core
