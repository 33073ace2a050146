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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "kising/chain.hpp"
#include "kising/detail/basis_action.hpp"
#include "kising/errors.hpp"
#include "kising/pauli.hpp"

namespace kising {

/// Heisenberg transport U^dag P U for U = exp(-i pi/4 Z_site).
/// X -> -Y, Y -> X, Z and I unchanged.
inline PauliString conjugate_by_z_rotation(const PauliString &p, std::size_t site) {
    require(site >= 1 && site <= p.size(), "site out of range: " + std::to_string(site));
    return z_rotation(p.size(), site).conjugate(p, Transport::heisenberg);
}

/// Heisenberg transport U^dag P U for U = exp(-i pi/4 X_i X_j).
inline PauliString conjugate_by_xx_rotation(const PauliString &p, std::size_t i, std::size_t j) {
    require(i >= 1 && i <= p.size() && j >= 1 && j <= p.size() && i != j,
            "invalid bond (" + std::to_string(i) + ", " + std::to_string(j) + ")");
    return xx_rotation(p.size(), i, j).conjugate(p, Transport::heisenberg);
}

/// Transports `p` through the product of `acting_order` (first element acts
/// first on a state).
inline PauliString transport(PauliString p, std::span<const PauliRotation> acting_order,
                             Transport direction) {
    if (direction == Transport::heisenberg) {
        // U = G_k ... G_1, so U^dag P U conjugates by G_k first.
        for (auto it = acting_order.rbegin(); it != acting_order.rend(); ++it) {
            p = it->conjugate(p, direction);
        }
    } else {
        for (const auto &g : acting_order) {
            p = g.conjugate(p, direction);
        }
    }
    return p;
}

/// U_blk^dag P U_blk with U_blk = X_blk,blk Z_blk.
inline PauliString conjugate_by_block_unitary(const PauliString &p, Block block,
                                              const ChainConfig &cfg) {
    require(p.size() == cfg.length(), "Pauli string length does not match the chain");
    const GateLayers layers(cfg);
    const auto seq = layers.block_sequence(block);
    return transport(p, seq, Transport::heisenberg);
}

/// V_n as a product of commuting pi/4 rotations: one factor for an open chain,
/// one per interface bond for a closed chain.
struct InteractionOperator {
    std::size_t n = 0;
    std::vector<PauliRotation> factors;

    bool operator==(const InteractionOperator &) const = default;
};

/// V_1 .. V_{n_max} by repeated conjugation V_n = (U_A U_B)^dag V_{n-1} (U_A U_B),
/// starting from the interface bonds X_AB.
inline std::vector<InteractionOperator> interaction_operators(std::size_t n_max,
                                                              const ChainConfig &cfg) {
    const GateLayers layers(cfg);
    std::vector<PauliRotation> block_seq = layers.block_sequence(Block::A);
    const auto b_seq = layers.block_sequence(Block::B);
    block_seq.insert(block_seq.end(), b_seq.begin(), b_seq.end());

    std::vector<PauliString> generators;
    for (const auto &bond : layers.x_ab) {
        generators.push_back(bond.generator());
    }
    std::vector<InteractionOperator> out;
    out.reserve(n_max);
    for (std::size_t n = 1; n <= n_max; ++n) {
        InteractionOperator op{n, {}};
        for (auto &g : generators) {
            g = transport(g, block_seq, Transport::heisenberg);
            op.factors.emplace_back(g);
        }
        out.push_back(std::move(op));
    }
    return out;
}

inline InteractionOperator interaction_operator_recursive(std::size_t n, const ChainConfig &cfg) {
    require(n >= 1, "interaction operators are indexed from n = 1");
    return interaction_operators(n, cfg).back();
}

namespace detail {

struct StringBuilder {
    const ChainConfig &cfg;
    PauliString p;
    explicit StringBuilder(const ChainConfig &c) : cfg(c), p(c.length()) {}
    StringBuilder &a(std::size_t j, char letter) {
        p.set_letter(cfg.site_a(j), letter);
        return *this;
    }
    StringBuilder &b(std::size_t j, char letter) {
        p.set_letter(cfg.site_b(j), letter);
        return *this;
    }
    /// Z on A_j and B_j for j = 1..last.
    StringBuilder &z_ladder(std::size_t last) {
        for (std::size_t j = 1; j <= last; ++j) {
            a(j, 'Z').b(j, 'Z');
        }
        return *this;
    }
    InteractionOperator build(std::size_t n) const { return {n, {PauliRotation(p)}}; }
};

}  // namespace detail

/// Closed-form V_n for the open chain, or nullopt where no closed form is known.
///
/// Equal blocks (M = L/2), m = ((n-1) mod L) + 1:
///   m <= M      : A^y_m B^y_m  prod_{j<m} A^z_j B^z_j
///   m = M + k   : A^x_{M-k+1} B^x_{M-k+1}  prod_{j<=M-k} A^z_j B^z_j
/// Unequal blocks (M < L/2): n <= M as above, plus
///   n = M + 1   : A^x_M B^y_{M+1} B^z_M  prod_{j<M} A^z_j B^z_j
///   n = M + 2   : A^x_{M-1} B^y_{M+2} B^z_{M+1} B^z_M B^z_{M-1}  prod_{j<=M-2} A^z_j B^z_j
/// Closed chains have no closed form here.
inline std::optional<InteractionOperator> interaction_operator_closed_form(std::size_t n,
                                                                           const ChainConfig &cfg) {
    require(n >= 1, "interaction operators are indexed from n = 1");
    if (cfg.boundary() != Boundary::open) {
        return std::nullopt;
    }
    const std::size_t m = cfg.block_a();
    const std::size_t len = cfg.length();
    detail::StringBuilder s(cfg);
    if (cfg.equal_blocks()) {
        const std::size_t r = (n - 1) % len + 1;
        if (r <= m) {
            return s.a(r, 'Y').b(r, 'Y').z_ladder(r - 1).build(n);
        }
        const std::size_t k = r - m;
        return s.a(m - k + 1, 'X').b(m - k + 1, 'X').z_ladder(m - k).build(n);
    }
    if (n <= m) {
        return s.a(n, 'Y').b(n, 'Y').z_ladder(n - 1).build(n);
    }
    if (n == m + 1) {
        return s.z_ladder(m - 1).a(m, 'X').b(m, 'Z').b(m + 1, 'Y').build(n);
    }
    if (n == m + 2 && m >= 2 && m + 2 <= cfg.block_b()) {
        return s.z_ladder(m - 2)
            .a(m - 1, 'X')
            .b(m - 1, 'Z')
            .b(m, 'Z')
            .b(m + 1, 'Z')
            .b(m + 2, 'Y')
            .build(n);
    }
    return std::nullopt;
}

/// The decimated string exactly as printed in the main-text description of
/// V_{M+k} for equal blocks: A^x_{M-k+1} B^x_{M-k} A^z_{M-k} B^z_{M-k} ... A^z_1 B^z_1.
/// Returns nullopt when the printed indices name a nonexistent site (k = M).
inline std::optional<PauliString> printed_decimation_string(std::size_t k, const ChainConfig &cfg) {
    const std::size_t m = cfg.block_a();
    require(cfg.equal_blocks(), "decimation strings are stated for equal blocks");
    require(k >= 1 && k <= m, "decimation step k must lie in 1..M");
    if (m - k < 1) {
        return std::nullopt;
    }
    detail::StringBuilder s(cfg);
    s.z_ladder(m - k).a(m - k + 1, 'X').b(m - k, 'X');
    return s.p;
}

/// Renders a string with block labels, e.g. "+ A2Y A1Z B1Z B2Y".
inline std::string block_label_string(const PauliString &p, const ChainConfig &cfg) {
    static constexpr const char *kPrefix[] = {"+", "+i", "-", "-i"};
    std::string out = kPrefix[p.phase()];
    for (std::size_t j = cfg.block_a(); j >= 1; --j) {
        const char c = p.letter(cfg.site_a(j));
        if (c != 'I') out += " A" + std::to_string(j) + c;
    }
    for (std::size_t j = 1; j <= cfg.block_b(); ++j) {
        const char c = p.letter(cfg.site_b(j));
        if (c != 'I') out += " B" + std::to_string(j) + c;
    }
    return out;
}

namespace detail {

inline void check_operator_cap(const ChainConfig &cfg) {
    if (cfg.length() > kMaxOperatorSites) {
        throw ResourceError("dense operators limited to " + std::to_string(kMaxOperatorSites) +
                            " sites, chain has " + std::to_string(cfg.length()));
    }
}

inline void left_multiply(Eigen::MatrixXcd &m, std::span<const PauliRotation> acting_order) {
    for (const auto &g : acting_order) {
        apply_rotation_rows(m, g);
    }
}

}  // namespace detail

/// Max-entry residual between U^n and U_A^n U_B^n V_n ... V_1, built as dense
/// 2^L x 2^L matrices.
inline double verify_factorization(std::size_t n, const ChainConfig &cfg) {
    detail::check_operator_cap(cfg);
    const GateLayers layers(cfg);
    const Eigen::Index dim = Eigen::Index{1} << cfg.length();
    const auto kick = layers.kick_sequence();
    auto local = layers.block_sequence(Block::A);
    const auto local_b = layers.block_sequence(Block::B);
    local.insert(local.end(), local_b.begin(), local_b.end());

    Eigen::MatrixXcd lhs = Eigen::MatrixXcd::Identity(dim, dim);
    Eigen::MatrixXcd rhs = Eigen::MatrixXcd::Identity(dim, dim);
    for (std::size_t k = 0; k < n; ++k) {
        detail::left_multiply(lhs, kick);
    }
    // V_n ... V_1: V_1 acts first.
    for (const auto &v : interaction_operators(n, cfg)) {
        detail::left_multiply(rhs, v.factors);
    }
    for (std::size_t k = 0; k < n; ++k) {
        detail::left_multiply(rhs, local);
    }
    return (lhs - rhs).cwiseAbs().maxCoeff();
}

}  // namespace kising
