// Copyright 2026 The kising Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "kising/errors.hpp"

namespace kising {

/// Dense bit matrix over GF(2), rows packed into 64-bit words.
class BinaryMatrix {
   public:
    BinaryMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), words_per_row_((cols + 63) / 64), data_(rows * words_per_row_, 0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t words_per_row() const { return words_per_row_; }

    bool get(std::size_t r, std::size_t c) const {
        check(r, c);
        return (data_[r * words_per_row_ + (c >> 6)] >> (c & 63)) & 1;
    }
    void set(std::size_t r, std::size_t c, bool value) {
        check(r, c);
        const std::uint64_t mask = std::uint64_t{1} << (c & 63);
        auto &w = data_[r * words_per_row_ + (c >> 6)];
        w = value ? (w | mask) : (w & ~mask);
    }

    std::span<std::uint64_t> row(std::size_t r) { return {data_.data() + r * words_per_row_, words_per_row_}; }
    std::span<const std::uint64_t> row(std::size_t r) const {
        return {data_.data() + r * words_per_row_, words_per_row_};
    }

   private:
    void check(std::size_t r, std::size_t c) const {
        require(r < rows_ && c < cols_, "bit matrix index out of range");
    }

    std::size_t rows_;
    std::size_t cols_;
    std::size_t words_per_row_;
    std::vector<std::uint64_t> data_;
};

/// Rank over GF(2) by forward elimination on packed rows. Takes a copy.
inline std::size_t gf2_rank(BinaryMatrix m) {
    const std::size_t words = m.words_per_row();
    std::size_t rank = 0;
    for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
        const std::size_t w = c >> 6;
        const std::uint64_t bit = std::uint64_t{1} << (c & 63);
        std::size_t pivot = rank;
        while (pivot < m.rows() && !(m.row(pivot)[w] & bit)) ++pivot;
        if (pivot == m.rows()) continue;
        if (pivot != rank) {
            auto a = m.row(pivot), b = m.row(rank);
            std::swap_ranges(a.begin() + static_cast<std::ptrdiff_t>(w), a.end(),
                             b.begin() + static_cast<std::ptrdiff_t>(w));
        }
        const auto src = m.row(rank);
        for (std::size_t r = rank + 1; r < m.rows(); ++r) {
            auto dst = m.row(r);
            if (dst[w] & bit) {
                for (std::size_t k = w; k < words; ++k) dst[k] ^= src[k];
            }
        }
        ++rank;
    }
    return rank;
}

}  // namespace kising
