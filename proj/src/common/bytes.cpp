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

#include "bdt/common/bytes.hpp"

namespace bdt {

const char *to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::EmptyTree: return "EmptyTree";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::InsufficientFragments: return "InsufficientFragments";
    case ErrorCode::BadShareSet: return "BadShareSet";
    case ErrorCode::InsufficientShares: return "InsufficientShares";
    case ErrorCode::MalformedCiphertext: return "MalformedCiphertext";
    case ErrorCode::DecryptionFailed: return "DecryptionFailed";
    case ErrorCode::Malformed: return "Malformed";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::LivenessTimeout: return "LivenessTimeout";
    }
    return "Unknown";
}

std::string to_hex(ByteView data) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(data.size() * 2);
    for (auto b : data) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0xf]);
    }
    return out;
}

} // namespace bdt
