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

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bdt/common/error.hpp"

namespace bdt {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

/// 1-based party index.
using PartyId = std::uint32_t;

inline Bytes to_bytes(std::string_view s) { return Bytes(s.begin(), s.end()); }

std::string to_hex(ByteView data);

/// Append-only encoder. Integers are written big-endian, which is the wire
/// convention of every protocol message in this library.
class Writer {
  public:
    Writer() = default;
    explicit Writer(std::size_t reserve) { buf_.reserve(reserve); }

    Writer &u8(std::uint8_t v) {
        buf_.push_back(v);
        return *this;
    }
    Writer &u32(std::uint32_t v) {
        for (int i = 3; i >= 0; --i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
        return *this;
    }
    Writer &u64(std::uint64_t v) {
        for (int i = 7; i >= 0; --i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
        return *this;
    }
    Writer &raw(ByteView data) {
        buf_.insert(buf_.end(), data.begin(), data.end());
        return *this;
    }
    /// Length-prefixed (u64) byte string.
    Writer &blob(ByteView data) {
        u64(data.size());
        return raw(data);
    }

    const Bytes &bytes() const & { return buf_; }
    Bytes take() && { return std::move(buf_); }

  private:
    Bytes buf_;
};

/// Bounds-checked decoder; every read past the end throws Error(Malformed).
class Reader {
  public:
    explicit Reader(ByteView data) : data_(data) {}

    std::uint8_t u8() {
        need(1);
        return data_[pos_++];
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v = (v << 8) | data_[pos_++];
        return v;
    }
    std::uint64_t u64() {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v = (v << 8) | data_[pos_++];
        return v;
    }
    ByteView raw(std::size_t len) {
        need(len);
        auto out = data_.subspan(pos_, len);
        pos_ += len;
        return out;
    }
    Bytes blob() {
        auto len = u64();
        auto v = raw(len);
        return Bytes(v.begin(), v.end());
    }
    /// Element count that must be coverable by at least `min_elem` bytes each.
    std::uint64_t count(std::size_t min_elem) {
        auto c = u64();
        if (min_elem > 0 && c > remaining() / min_elem) throw Error(ErrorCode::Malformed, "count exceeds payload");
        return c;
    }

    std::size_t remaining() const { return data_.size() - pos_; }
    bool done() const { return pos_ == data_.size(); }
    void expect_done() const {
        if (!done()) throw Error(ErrorCode::Malformed, "trailing bytes");
    }

  private:
    void need(std::size_t len) const {
        if (data_.size() - pos_ < len) throw Error(ErrorCode::Malformed, "truncated message");
    }

    ByteView data_;
    std::size_t pos_ = 0;
};

} // namespace bdt
