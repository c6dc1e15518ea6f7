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

#include "bdt/crypto/erasure.hpp"

#include <array>
#include <set>

namespace bdt::crypto {
namespace {

// GF(2^8) with the 0x11d reduction polynomial; 2 generates the multiplicative group.
struct Gf256 {
    std::array<std::uint8_t, 512> exp{};
    std::array<std::uint8_t, 256> log{};

    Gf256() {
        unsigned x = 1;
        for (int i = 0; i < 255; ++i) {
            exp[i] = static_cast<std::uint8_t>(x);
            log[x] = static_cast<std::uint8_t>(i);
            x <<= 1;
            if (x & 0x100) x ^= 0x11d;
        }
        for (int i = 255; i < 512; ++i) exp[i] = exp[i - 255];
    }

    std::uint8_t mul(std::uint8_t a, std::uint8_t b) const {
        if (a == 0 || b == 0) return 0;
        return exp[log[a] + log[b]];
    }
    std::uint8_t inv(std::uint8_t a) const { return exp[255 - log[a]]; }
    std::uint8_t pow(std::uint8_t a, unsigned e) const {
        if (e == 0) return 1;
        if (a == 0) return 0;
        return exp[(log[a] * e) % 255];
    }
};

const Gf256 &gf() {
    static const Gf256 field;
    return field;
}

using Matrix = std::vector<std::vector<std::uint8_t>>;

Matrix invert(Matrix m) {
    const auto &f = gf();
    const std::size_t k = m.size();
    Matrix inv(k, std::vector<std::uint8_t>(k, 0));
    for (std::size_t i = 0; i < k; ++i) inv[i][i] = 1;

    for (std::size_t col = 0; col < k; ++col) {
        std::size_t pivot = col;
        while (pivot < k && m[pivot][col] == 0) ++pivot;
        if (pivot == k) throw Error(ErrorCode::BadParams, "singular coding matrix");
        std::swap(m[pivot], m[col]);
        std::swap(inv[pivot], inv[col]);

        const auto scale = f.inv(m[col][col]);
        for (std::size_t j = 0; j < k; ++j) {
            m[col][j] = f.mul(m[col][j], scale);
            inv[col][j] = f.mul(inv[col][j], scale);
        }
        for (std::size_t row = 0; row < k; ++row) {
            if (row == col || m[row][col] == 0) continue;
            const auto factor = m[row][col];
            for (std::size_t j = 0; j < k; ++j) {
                m[row][j] ^= f.mul(factor, m[col][j]);
                inv[row][j] ^= f.mul(factor, inv[col][j]);
            }
        }
    }
    return inv;
}

// Systematic generator: V * inverse(V[0..k)), V the n x k Vandermonde matrix
// over evaluation points 0..n-1. Row i < k is the i-th unit vector.
Matrix generator(std::uint32_t k, std::uint32_t n) {
    const auto &f = gf();
    Matrix v(n, std::vector<std::uint8_t>(k));
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = 0; j < k; ++j) v[i][j] = f.pow(static_cast<std::uint8_t>(i), j);

    const Matrix top_inv = invert(Matrix(v.begin(), v.begin() + k));
    Matrix g(n, std::vector<std::uint8_t>(k, 0));
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = 0; j < k; ++j) {
            std::uint8_t acc = 0;
            for (std::uint32_t t = 0; t < k; ++t) acc ^= f.mul(v[i][t], top_inv[t][j]);
            g[i][j] = acc;
        }
    return g;
}

void check_params(std::uint32_t k, std::uint32_t n) {
    if (k == 0 || k > n || n > 255) throw Error(ErrorCode::BadParams, "erasure code requires 1 <= k <= n <= 255");
}

// Row-vector times stripes, accumulated into out.
void mul_add(std::uint8_t coeff, ByteView src, Bytes &out) {
    if (coeff == 0) return;
    const auto &f = gf();
    if (coeff == 1) {
        for (std::size_t i = 0; i < src.size(); ++i) out[i] ^= src[i];
        return;
    }
    const unsigned lc = f.log[coeff];
    for (std::size_t i = 0; i < src.size(); ++i)
        if (src[i]) out[i] ^= f.exp[lc + f.log[src[i]]];
}

} // namespace

std::vector<Bytes> erasure_encode(std::uint32_t k, std::uint32_t n, ByteView data) {
    check_params(k, n);
    if (data.size() > 0xffffffffu) throw Error(ErrorCode::BadParams, "payload too large");

    const std::size_t total = data.size() + 4;
    const std::size_t stripe = (total + k - 1) / k;

    Bytes padded(stripe * k, 0);
    const auto len = static_cast<std::uint32_t>(data.size());
    padded[0] = static_cast<std::uint8_t>(len >> 24);
    padded[1] = static_cast<std::uint8_t>(len >> 16);
    padded[2] = static_cast<std::uint8_t>(len >> 8);
    padded[3] = static_cast<std::uint8_t>(len);
    std::copy(data.begin(), data.end(), padded.begin() + 4);

    std::vector<Bytes> fragments(n);
    for (std::uint32_t i = 0; i < k; ++i)
        fragments[i].assign(padded.begin() + i * stripe, padded.begin() + (i + 1) * stripe);
    if (n == k) return fragments;

    const Matrix g = generator(k, n);
    for (std::uint32_t i = k; i < n; ++i) {
        fragments[i].assign(stripe, 0);
        for (std::uint32_t j = 0; j < k; ++j) mul_add(g[i][j], fragments[j], fragments[i]);
    }
    return fragments;
}

Bytes erasure_decode(std::uint32_t k, std::uint32_t n, std::span<const Fragment> fragments) {
    check_params(k, n);

    std::vector<const Fragment *> chosen;
    std::set<std::uint32_t> seen;
    for (const auto &frag : fragments) {
        if (frag.index >= n || !seen.insert(frag.index).second) continue;
        chosen.push_back(&frag);
        if (chosen.size() == k) break;
    }
    if (chosen.size() < k) throw Error(ErrorCode::InsufficientFragments, "need k distinct fragments");

    const std::size_t stripe = chosen.front()->data.size();
    for (auto *frag : chosen)
        if (frag->data.size() != stripe) throw Error(ErrorCode::Malformed, "fragment sizes differ");
    if (stripe * k < 4) throw Error(ErrorCode::Malformed, "fragments too short");

    std::vector<Bytes> stripes(k);
    const Matrix g = generator(k, n);
    Matrix sub(k);
    for (std::uint32_t r = 0; r < k; ++r) sub[r] = g[chosen[r]->index];
    const Matrix inv = invert(sub);
    for (std::uint32_t i = 0; i < k; ++i) {
        stripes[i].assign(stripe, 0);
        for (std::uint32_t j = 0; j < k; ++j) mul_add(inv[i][j], chosen[j]->data, stripes[i]);
    }

    Bytes padded;
    padded.reserve(stripe * k);
    for (auto &s : stripes) padded.insert(padded.end(), s.begin(), s.end());

    const std::uint32_t len = (std::uint32_t{padded[0]} << 24) | (std::uint32_t{padded[1]} << 16) |
                              (std::uint32_t{padded[2]} << 8) | std::uint32_t{padded[3]};
    if (std::size_t{len} + 4 > padded.size()) throw Error(ErrorCode::Malformed, "embedded length out of range");
    return Bytes(padded.begin() + 4, padded.begin() + 4 + len);
}

} // namespace bdt::crypto
