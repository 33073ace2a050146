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

#include <string>
#include <utility>
#include <vector>

#include "kising/errors.hpp"
#include "kising/pauli.hpp"

namespace kising {

enum class Boundary { open, closed };

inline std::string to_string(Boundary b) { return b == Boundary::open ? "open" : "closed"; }

enum class Block { A, B };

/// A spin chain of even length L split into block A (sites 1..M) and block B
/// (sites M+1..L).
///
/// Block-relative labels count outward from the cut: A_j is physical site M+1-j
/// and B_j is physical site M+j. Physical sites are the only storage layout;
/// the labels are a view.
class ChainConfig {
   public:
    ChainConfig(std::size_t length, Boundary boundary, std::size_t block_a)
        : length_(length), boundary_(boundary), block_a_(block_a) {
        require(length >= 4 && length % 2 == 0,
                "chain length must be even and at least 4, got " + std::to_string(length));
        require(block_a >= 1 && block_a <= length / 2,
                "block A size must lie in 1..L/2, got " + std::to_string(block_a));
    }

    /// Equal blocks, M = L/2.
    static ChainConfig equal_blocks(std::size_t length, Boundary boundary) {
        return ChainConfig(length, boundary, length / 2);
    }

    std::size_t length() const { return length_; }
    Boundary boundary() const { return boundary_; }
    std::size_t block_a() const { return block_a_; }
    std::size_t block_b() const { return length_ - block_a_; }
    bool equal_blocks() const { return 2 * block_a_ == length_; }

    /// Period of the block entropy: L kicks (open) or L/2 kicks (closed).
    std::size_t period() const { return boundary_ == Boundary::open ? length_ : length_ / 2; }

    std::size_t site_a(std::size_t j) const {
        require(j >= 1 && j <= block_a_, "A_" + std::to_string(j) + " does not exist");
        return block_a_ + 1 - j;
    }
    std::size_t site_b(std::size_t j) const {
        require(j >= 1 && j <= block_b(), "B_" + std::to_string(j) + " does not exist");
        return block_a_ + j;
    }
    std::size_t site(Block block, std::size_t j) const {
        return block == Block::A ? site_a(j) : site_b(j);
    }
    bool in_block_a(std::size_t site) const { return site >= 1 && site <= block_a_; }

    /// Human-readable block label of a physical site, e.g. "A3" or "B1".
    std::string label(std::size_t site) const {
        require(site >= 1 && site <= length_, "site out of range");
        return site <= block_a_ ? "A" + std::to_string(block_a_ + 1 - site)
                                : "B" + std::to_string(site - block_a_);
    }

    /// All XX bonds: (s, s+1) for s < L, plus (L, 1) for the closed chain.
    std::vector<std::pair<std::size_t, std::size_t>> bonds() const {
        std::vector<std::pair<std::size_t, std::size_t>> out;
        for (std::size_t s = 1; s < length_; ++s) {
            out.emplace_back(s, s + 1);
        }
        if (boundary_ == Boundary::closed) {
            out.emplace_back(length_, 1);
        }
        return out;
    }

    bool operator==(const ChainConfig &) const = default;

   private:
    std::size_t length_;
    Boundary boundary_;
    std::size_t block_a_;
};

inline PauliRotation z_rotation(std::size_t length, std::size_t site) {
    return PauliRotation(PauliString::single(length, site, 'Z'));
}

inline PauliRotation xx_rotation(std::size_t length, std::size_t i, std::size_t j) {
    require(i != j, "XX bond needs two distinct sites");
    return PauliRotation(PauliString::from_letters(length, {{i, 'X'}, {j, 'X'}}));
}

/// The Floquet map split as U = X_AB X_AA X_BB Z_A Z_B.
///
/// X_AB holds the bonds crossing the cut: (M, M+1), plus (L, 1) when closed.
/// Rotations inside one layer commute with each other.
struct GateLayers {
    std::vector<PauliRotation> x_ab;
    std::vector<PauliRotation> x_aa;
    std::vector<PauliRotation> x_bb;
    std::vector<PauliRotation> z_a;
    std::vector<PauliRotation> z_b;

    explicit GateLayers(const ChainConfig &cfg) {
        const std::size_t n = cfg.length();
        const std::size_t m = cfg.block_a();
        for (auto [i, j] : cfg.bonds()) {
            const bool i_in_a = cfg.in_block_a(i);
            const bool j_in_a = cfg.in_block_a(j);
            auto &layer = i_in_a != j_in_a ? x_ab : (i_in_a ? x_aa : x_bb);
            layer.push_back(xx_rotation(n, i, j));
        }
        for (std::size_t s = 1; s <= n; ++s) {
            (s <= m ? z_a : z_b).push_back(z_rotation(n, s));
        }
    }

    /// Every rotation of one kick in the order it acts on a state.
    std::vector<PauliRotation> kick_sequence() const {
        std::vector<PauliRotation> out;
        for (const auto *layer : {&z_b, &z_a, &x_bb, &x_aa, &x_ab}) {
            out.insert(out.end(), layer->begin(), layer->end());
        }
        return out;
    }

    /// Rotations of U_A = X_AA Z_A (or U_B) in the order they act on a state.
    std::vector<PauliRotation> block_sequence(Block block) const {
        const auto &z = block == Block::A ? z_a : z_b;
        const auto &x = block == Block::A ? x_aa : x_bb;
        std::vector<PauliRotation> out(z.begin(), z.end());
        out.insert(out.end(), x.begin(), x.end());
        return out;
    }
};

}  // namespace kising
