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
#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "kising/chain.hpp"
#include "kising/dense.hpp"
#include "kising/errors.hpp"
#include "kising/gf2.hpp"
#include "kising/pauli.hpp"

namespace kising {

namespace detail {

/// Bits 0..n-1 of a packed plane shifted down by one: out bit k = in bit k+1.
inline void shift_down_one(std::span<const std::uint64_t> in, std::span<std::uint64_t> out) {
    const std::size_t words = in.size();
    for (std::size_t w = 0; w < words; ++w) {
        const std::uint64_t carry = w + 1 < words ? in[w + 1] << 63 : 0;
        out[w] = (in[w] >> 1) | carry;
    }
}

/// Cyclic rotation of bits 0..n-1 up by one: out bit k+1 = in bit k, out bit 0 = in bit n-1.
inline void rotate_up_one(std::span<const std::uint64_t> in, std::span<std::uint64_t> out, std::size_t n) {
    const std::size_t words = in.size();
    const std::uint64_t wrap = (in[(n - 1) >> 6] >> ((n - 1) & 63)) & 1;
    for (std::size_t w = words; w-- > 0;) {
        const std::uint64_t carry = w > 0 ? in[w - 1] >> 63 : wrap;
        out[w] = (in[w] << 1) | carry;
    }
    if (n % 64 != 0) out[words - 1] &= (std::uint64_t{1} << (n % 64)) - 1;
}

inline void mask_to_length(std::span<std::uint64_t> plane, std::size_t n) {
    if (n % 64 != 0) plane[plane.size() - 1] &= (std::uint64_t{1} << (n % 64)) - 1;
}

/// Leftmost site (1-based) in the support of p at or after `from`, or 0 if none.
inline std::size_t first_site(const PauliString &p, std::size_t from = 1) {
    const auto xs = p.x_words(), zs = p.z_words();
    std::size_t w = (from - 1) >> 6;
    std::uint64_t word = (xs[w] | zs[w]) & (~std::uint64_t{0} << ((from - 1) & 63));
    while (true) {
        if (word) return w * 64 + static_cast<std::size_t>(std::countr_zero(word)) + 1;
        if (++w == xs.size()) return 0;
        word = xs[w] | zs[w];
    }
}

}  // namespace detail

/// Stabilizer generators of a pure L-qubit state, one Pauli string per row.
///
/// Gates transport generators as g -> U g U^dag. Generator signs stay in {+1, -1}.
class StabilizerTableau {
   public:
    /// Generators Z_1..Z_L, the tableau of |0...0>.
    static StabilizerTableau zero_state(std::size_t num_sites) {
        require(num_sites >= 1, "tableau needs at least one site");
        StabilizerTableau t;
        t.num_sites_ = num_sites;
        for (std::size_t s = 1; s <= num_sites; ++s) {
            t.gens_.push_back(PauliString::single(num_sites, s, 'Z'));
        }
        t.echelon_ = true;
        return t;
    }

    /// Builds a tableau from explicit generators (validated).
    static StabilizerTableau from_generators(std::vector<PauliString> gens) {
        require(!gens.empty(), "tableau needs generators");
        StabilizerTableau t;
        t.num_sites_ = gens.front().size();
        t.gens_ = std::move(gens);
        t.check_invariants();
        return t;
    }

    /// Parses the dump format: one generator per line.
    static StabilizerTableau parse(std::string_view text) {
        std::vector<PauliString> gens;
        std::istringstream in{std::string(text)};
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty()) gens.push_back(PauliString::from_str(line));
        }
        return from_generators(std::move(gens));
    }

    std::size_t num_sites() const { return num_sites_; }
    const std::vector<PauliString> &generators() const { return gens_; }

    std::string dump() const {
        std::string out;
        for (const auto &g : gens_) {
            out += g.str();
            out += '\n';
        }
        return out;
    }

    void apply_rotation(const PauliRotation &rot) {
        require(rot.size() == num_sites_, "rotation and tableau differ in length");
        for (auto &g : gens_) g = rot.conjugate(g, Transport::schrodinger);
        echelon_ = false;
    }

    /// exp(-i pi/4 Z_s) on every site, applied to all generators at once.
    void apply_z_layer() {
        for (auto &g : gens_) {
            auto xs = g.x_words();
            auto zs = g.z_words();
            int ys = 0;
            for (std::size_t w = 0; w < xs.size(); ++w) {
                ys += std::popcount(xs[w] & zs[w]);
                zs[w] ^= xs[w];  // X <-> Y
            }
            // X -> +Y, Y -> -X
            g.multiply_phase(2 * (ys & 1));
        }
        echelon_ = false;
    }

    /// exp(-i pi/4 X_s X_{s+1}) on every bond of the chain (plus (L,1) if closed).
    void apply_xx_layer(Boundary boundary) {
        const std::size_t n = num_sites_;
        const std::size_t words = PauliString::word_count(n);
        std::vector<std::uint64_t> bonds(words), flips(words);
        for (auto &g : gens_) {
            auto xs = g.x_words();
            const auto zs = std::span<const std::uint64_t>(g.z_words());
            // Bond (s, s+1) anticommutes with g iff z_s != z_{s+1}; bit s-1 marks it.
            detail::shift_down_one(zs, bonds);
            for (std::size_t w = 0; w < words; ++w) bonds[w] ^= zs[w];
            const bool wrap = boundary == Boundary::closed;
            const std::uint64_t last_bit = std::uint64_t{1} << ((n - 1) & 63);
            bonds[words - 1] &= ~last_bit;
            if (wrap && (((zs[(n - 1) >> 6] >> ((n - 1) & 63)) ^ zs[0]) & 1)) bonds[words - 1] |= last_bit;
            detail::mask_to_length(bonds, n);
            // The product of the anticommuting bonds is the X string on `flips`.
            detail::rotate_up_one(bonds, flips, n);
            int count = 0, plus = 0, minus = 0;
            for (std::size_t w = 0; w < words; ++w) {
                flips[w] ^= bonds[w];
                count += std::popcount(bonds[w]);
                plus += std::popcount(flips[w] & xs[w] & zs[w]);    // XY = iZ
                minus += std::popcount(flips[w] & ~xs[w] & zs[w]);  // XZ = -iY
                xs[w] ^= flips[w];
            }
            // g -> (-i)^count X_flips g
            g.multiply_phase(3 * count + plus - minus);
        }
        echelon_ = false;
    }

    /// One Floquet kick: Z layer, then the XX layer.
    void apply_kick(const ChainConfig &cfg) {
        require(cfg.length() == num_sites_, "chain and tableau differ in length");
        apply_z_layer();
        apply_xx_layer(cfg.boundary());
    }

    /// Brings the generators into row-echelon form with respect to the column
    /// order x_1, z_1, x_2, z_2, ...: every generator has a distinct leading
    /// column. Products are phase-exact, so the stabilized state is unchanged.
    void canonicalize() {
        if (echelon_) return;
        const std::size_t n = num_sites_;
        std::vector<std::vector<std::size_t>> buckets(n + 1);
        for (std::size_t r = 0; r < gens_.size(); ++r) {
            const std::size_t lead = detail::first_site(gens_[r]);
            if (lead == 0) throw std::logic_error("identity generator in stabilizer tableau");
            buckets[lead].push_back(r);
        }
        std::vector<std::size_t> order;
        order.reserve(gens_.size());
        for (std::size_t s = 1; s <= n; ++s) {
            auto &bucket = buckets[s];
            if (bucket.empty()) continue;
            std::optional<std::size_t> x_pivot, z_pivot;
            for (std::size_t r : bucket) {
                if (!gens_[r].x(s)) continue;
                if (!x_pivot) {
                    x_pivot = r;
                } else {
                    gens_[r] *= gens_[*x_pivot];
                }
            }
            for (std::size_t r : bucket) {
                if (r == x_pivot || !gens_[r].z(s)) continue;
                if (!z_pivot) {
                    z_pivot = r;
                } else {
                    gens_[r] *= gens_[*z_pivot];
                }
            }
            if (x_pivot) order.push_back(*x_pivot);
            if (z_pivot) order.push_back(*z_pivot);
            for (std::size_t r : bucket) {
                if (r == x_pivot || r == z_pivot) continue;
                const std::size_t lead = s < n ? detail::first_site(gens_[r], s + 1) : 0;
                if (lead == 0) throw std::logic_error("stabilizer generators are not independent");
                buckets[lead].push_back(r);
            }
            bucket.clear();
            bucket.shrink_to_fit();
        }
        std::vector<PauliString> sorted;
        sorted.reserve(gens_.size());
        for (std::size_t r : order) sorted.push_back(std::move(gens_[r]));
        gens_ = std::move(sorted);
        echelon_ = true;
    }

    bool is_echelon() const { return echelon_; }

    /// Entropy of sites 1..block_size read off the echelon form:
    /// rank of the block-restricted generators equals the number of generators
    /// whose leading site lies inside the block.
    std::size_t prefix_entropy(std::size_t block_size) {
        require(block_size <= num_sites_, "block larger than the chain");
        canonicalize();
        std::size_t rank = 0;
        for (const auto &g : gens_) rank += detail::first_site(g) <= block_size;
        return rank - block_size;
    }

    /// Throws unless the generators commute pairwise, are Hermitian, and are
    /// independent over GF(2).
    void check_invariants() const {
        require(gens_.size() == num_sites_, "tableau needs exactly L generators");
        for (std::size_t a = 0; a < gens_.size(); ++a) {
            require(gens_[a].size() == num_sites_, "generator length mismatch");
            require(gens_[a].is_hermitian(), "generator sign must be +1 or -1");
            for (std::size_t b = a + 1; b < gens_.size(); ++b) {
                require(commutes(gens_[a], gens_[b]), "generators do not commute");
            }
        }
        BinaryMatrix m(num_sites_, 2 * num_sites_);
        for (std::size_t r = 0; r < num_sites_; ++r) {
            for (std::size_t s = 1; s <= num_sites_; ++s) {
                m.set(r, 2 * (s - 1), gens_[r].x(s));
                m.set(r, 2 * (s - 1) + 1, gens_[r].z(s));
            }
        }
        require(gf2_rank(std::move(m)) == num_sites_, "generators are not independent");
    }

   private:
    std::size_t num_sites_ = 0;
    std::vector<PauliString> gens_;
    bool echelon_ = false;
};

inline void tableau_apply_rotation(StabilizerTableau &tab, const PauliRotation &rot) { tab.apply_rotation(rot); }

/// n kicks on |0...0>.
inline StabilizerTableau tableau_evolve(std::size_t n, const ChainConfig &cfg) {
    auto tab = StabilizerTableau::zero_state(cfg.length());
    for (std::size_t k = 0; k < n; ++k) tab.apply_kick(cfg);
    return tab;
}

/// S = rank_GF2(generators restricted to the x/z columns of sites 1..M) - M.
inline std::size_t tableau_block_entropy(const StabilizerTableau &tab, std::size_t block_size) {
    require(block_size >= 1 && block_size < tab.num_sites(), "block size must lie in 1..L-1");
    BinaryMatrix m(tab.num_sites(), 2 * block_size);
    const auto &gens = tab.generators();
    for (std::size_t r = 0; r < gens.size(); ++r) {
        for (std::size_t s = 1; s <= block_size; ++s) {
            m.set(r, 2 * (s - 1), gens[r].x(s));
            m.set(r, 2 * (s - 1) + 1, gens[r].z(s));
        }
    }
    return gf2_rank(std::move(m)) - block_size;
}

/// <psi|P|psi> for a Hermitian Pauli string: 0 unless P commutes with every
/// generator, otherwise the sign with which P belongs to the stabilizer group.
inline int pauli_expectation(const StabilizerTableau &tab, const PauliString &p) {
    require(p.size() == tab.num_sites(), "Pauli string and tableau differ in length");
    require(p.is_hermitian(), "expectation requires a Hermitian Pauli string (phase +1 or -1)");
    for (const auto &g : tab.generators()) {
        if (!commutes(g, p)) return 0;
    }
    StabilizerTableau canon = tab;
    canon.canonicalize();
    PauliString acc(p.size());
    for (const auto &g : canon.generators()) {
        const std::size_t s = detail::first_site(g);
        // x-pivot rows precede z-pivot rows at the same site.
        const bool matches = g.x(s) ? acc.x(s) == p.x(s) : acc.z(s) == p.z(s);
        if (!matches) acc *= g;
    }
    PauliString residual = acc;
    residual.set_phase(0);
    PauliString target = p;
    target.set_phase(0);
    if (!(residual == target)) throw std::logic_error("commuting Pauli not found in stabilizer group");
    return acc.phase() == p.phase() ? 1 : -1;
}

/// Two-site reduced density matrix (1/4) sum_{a,b} <sigma_a sigma_b> sigma_a (x) sigma_b.
inline DensityMatrix tableau_two_qubit_rdm(const StabilizerTableau &tab, std::size_t i, std::size_t j) {
    const std::size_t n = tab.num_sites();
    require(i != j && i >= 1 && j >= 1 && i <= n && j <= n, "two distinct sites required");
    StabilizerTableau canon = tab;
    canon.canonicalize();
    Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
    static constexpr char kLetters[] = {'I', 'X', 'Y', 'Z'};
    for (char a : kLetters) {
        for (char b : kLetters) {
            const PauliString full = PauliString::from_letters(n, {{i, a}, {j, b}});
            const int e = pauli_expectation(canon, full);
            if (e == 0) continue;
            rho += static_cast<double>(e) * to_matrix(PauliString::from_letters(2, {{1, a}, {2, b}}));
        }
    }
    return {{i, j}, rho / 4.0};
}

/// Dense amplitudes of the stabilized state (global phase fixed by the first
/// basis state with nonzero overlap).
inline StateVector tableau_to_state(const StabilizerTableau &tab) {
    const std::size_t n = tab.num_sites();
    const std::uint64_t dim = std::uint64_t{1} << n;
    for (std::uint64_t b = 0; b < dim; ++b) {
        std::vector<Amplitude> amps(dim);
        amps[b] = 1.0;
        StateVector v(n, std::move(amps));
        for (const auto &g : tab.generators()) {
            const StateVector gv = apply_pauli(v, g);
            for (std::uint64_t k = 0; k < dim; ++k) v[k] = 0.5 * (v[k] + gv[k]);
        }
        const double norm = v.norm();
        if (norm > 1e-6) {
            for (auto &a : v.amplitudes()) a /= norm;
            return v;
        }
    }
    throw std::logic_error("stabilizer projector annihilated every basis state");
}

}  // namespace kising
