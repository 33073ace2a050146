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

#include <bit>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "kising/errors.hpp"

namespace kising {

/// A Pauli string i^k * P_1 (x) P_2 (x) ... (x) P_L in binary symplectic form.
///
/// Sites are numbered 1..L from left to right. Site s occupies bit (s-1) of the
/// packed X and Z planes; the letter at a site is read from (x, z):
/// (0,0)=I, (1,0)=X, (1,1)=Y, (0,1)=Z. Y is the Hermitian Pauli matrix, not XZ.
class PauliString {
   public:
    PauliString() = default;

    /// Identity string on `num_sites` sites.
    explicit PauliString(std::size_t num_sites)
        : num_sites_(num_sites), xs_(word_count(num_sites), 0), zs_(word_count(num_sites), 0) {
    }

    /// Parses "+iYZIIX" style text. The prefix is one of "+", "-", "+i", "-i"
    /// and may be omitted (meaning "+").
    static PauliString from_str(std::string_view text) {
        std::uint8_t phase = 0;
        if (text.starts_with("+i")) {
            phase = 1;
            text.remove_prefix(2);
        } else if (text.starts_with("-i")) {
            phase = 3;
            text.remove_prefix(2);
        } else if (text.starts_with('+')) {
            text.remove_prefix(1);
        } else if (text.starts_with('-')) {
            phase = 2;
            text.remove_prefix(1);
        }
        PauliString result(text.size());
        result.phase_ = phase;
        for (std::size_t k = 0; k < text.size(); ++k) {
            result.set_letter(k + 1, text[k]);
        }
        return result;
    }

    /// Single-letter string: `letter` at `site`, identity elsewhere.
    static PauliString single(std::size_t num_sites, std::size_t site, char letter) {
        PauliString result(num_sites);
        result.set_letter(site, letter);
        return result;
    }

    /// Builds a string from (site, letter) pairs; later entries overwrite earlier ones.
    static PauliString from_letters(std::size_t num_sites,
                                    std::initializer_list<std::pair<std::size_t, char>> letters) {
        PauliString result(num_sites);
        for (const auto &[site, letter] : letters) {
            result.set_letter(site, letter);
        }
        return result;
    }

    std::size_t size() const { return num_sites_; }

    /// Phase exponent k of the global factor i^k, always in {0,1,2,3}.
    std::uint8_t phase() const { return phase_; }
    void set_phase(int k) { phase_ = static_cast<std::uint8_t>(((k % 4) + 4) % 4); }

    /// True when the global factor is real, i.e. the string is a Hermitian operator.
    bool is_hermitian() const { return (phase_ & 1) == 0; }

    /// +1 or -1 for Hermitian strings.
    int sign() const {
        require(is_hermitian(), "sign() requires a Hermitian Pauli string");
        return phase_ == 0 ? 1 : -1;
    }

    bool x(std::size_t site) const { return bit(xs_, site); }
    bool z(std::size_t site) const { return bit(zs_, site); }

    char letter(std::size_t site) const {
        check_site(site);
        return "IXZY"[static_cast<int>(x(site)) | (static_cast<int>(z(site)) << 1)];
    }

    void set_letter(std::size_t site, char letter) {
        check_site(site);
        bool xb = false;
        bool zb = false;
        switch (letter) {
            case 'I':
            case '_':
                break;
            case 'X':
                xb = true;
                break;
            case 'Y':
                xb = zb = true;
                break;
            case 'Z':
                zb = true;
                break;
            default:
                throw StructuralError(std::string("not a Pauli letter: '") + letter + "'");
        }
        assign_bit(xs_, site, xb);
        assign_bit(zs_, site, zb);
    }

    /// Number of non-identity sites.
    std::size_t weight() const {
        std::size_t w = 0;
        for (std::size_t k = 0; k < xs_.size(); ++k) {
            w += static_cast<std::size_t>(std::popcount(xs_[k] | zs_[k]));
        }
        return w;
    }

    bool is_identity_letters() const { return weight() == 0; }

    std::span<const std::uint64_t> x_words() const { return xs_; }
    std::span<const std::uint64_t> z_words() const { return zs_; }
    std::span<std::uint64_t> x_words() { return xs_; }
    std::span<std::uint64_t> z_words() { return zs_; }

    std::string str() const {
        static constexpr const char *kPrefix[] = {"+", "+i", "-", "-i"};
        std::string out = kPrefix[phase_];
        out.reserve(out.size() + num_sites_);
        for (std::size_t s = 1; s <= num_sites_; ++s) {
            out.push_back(letter(s));
        }
        return out;
    }

    /// In-place right multiplication: *this = (*this) * rhs, phase-exact.
    PauliString &operator*=(const PauliString &rhs) {
        if (rhs.num_sites_ != num_sites_) {
            throw StructuralError("Pauli strings differ in length: " + std::to_string(num_sites_) +
                                  " vs " + std::to_string(rhs.num_sites_));
        }
        int k = phase_ + rhs.phase_ + product_phase(xs_, zs_, rhs.xs_, rhs.zs_);
        for (std::size_t w = 0; w < xs_.size(); ++w) {
            xs_[w] ^= rhs.xs_[w];
            zs_[w] ^= rhs.zs_[w];
        }
        set_phase(k);
        return *this;
    }

    /// Multiplies the global factor by i^k.
    PauliString &multiply_phase(int k) {
        set_phase(phase_ + k);
        return *this;
    }

    PauliString operator-() const {
        PauliString out = *this;
        out.multiply_phase(2);
        return out;
    }

    friend PauliString operator*(PauliString lhs, const PauliString &rhs) {
        lhs *= rhs;
        return lhs;
    }

    bool operator==(const PauliString &other) const = default;

    /// Exponent g (mod 4) with P(x1,z1) P(x2,z2) = i^g P(x1^x2, z1^z2) for the
    /// unphased letter strings, accumulated word by word.
    static int product_phase(std::span<const std::uint64_t> x1, std::span<const std::uint64_t> z1,
                             std::span<const std::uint64_t> x2, std::span<const std::uint64_t> z2) {
        int plus = 0;
        int minus = 0;
        for (std::size_t w = 0; w < x1.size(); ++w) {
            const std::uint64_t lx = x1[w] & ~z1[w], ly = x1[w] & z1[w], lz = ~x1[w] & z1[w];
            const std::uint64_t rx = x2[w] & ~z2[w], ry = x2[w] & z2[w], rz = ~x2[w] & z2[w];
            // XY = iZ, YZ = iX, ZX = iY and the reversed orders give -i.
            plus += std::popcount((lx & ry) | (ly & rz) | (lz & rx));
            minus += std::popcount((ly & rx) | (lz & ry) | (lx & rz));
        }
        return ((plus - minus) % 4 + 4) % 4;
    }

    static std::size_t word_count(std::size_t num_sites) { return (num_sites + 63) / 64; }

   private:
    void check_site(std::size_t site) const {
        if (site < 1 || site > num_sites_) {
            throw StructuralError("site " + std::to_string(site) + " outside 1.." +
                                  std::to_string(num_sites_));
        }
    }
    bool bit(const std::vector<std::uint64_t> &plane, std::size_t site) const {
        check_site(site);
        return (plane[(site - 1) >> 6] >> ((site - 1) & 63)) & 1;
    }
    static void assign_bit(std::vector<std::uint64_t> &plane, std::size_t site, bool value) {
        const std::uint64_t mask = std::uint64_t{1} << ((site - 1) & 63);
        if (value) {
            plane[(site - 1) >> 6] |= mask;
        } else {
            plane[(site - 1) >> 6] &= ~mask;
        }
    }

    std::size_t num_sites_ = 0;
    std::vector<std::uint64_t> xs_;
    std::vector<std::uint64_t> zs_;
    std::uint8_t phase_ = 0;
};

inline PauliString pauli_mul(const PauliString &p, const PauliString &q) { return p * q; }

/// True iff PQ = QP, i.e. the symplectic inner product vanishes mod 2.
inline bool commutes(const PauliString &p, const PauliString &q) {
    if (p.size() != q.size()) {
        throw StructuralError("Pauli strings differ in length");
    }
    const auto px = p.x_words(), pz = p.z_words(), qx = q.x_words(), qz = q.z_words();
    int parity = 0;
    for (std::size_t w = 0; w < px.size(); ++w) {
        parity ^= std::popcount((px[w] & qz[w]) ^ (pz[w] & qx[w])) & 1;
    }
    return parity == 0;
}

/// Dense 2^L x 2^L matrix of `p`, site 1 as the leftmost tensor factor.
inline Eigen::MatrixXcd to_matrix(const PauliString &p) {
    if (p.size() > kMaxOperatorSites) {
        throw ResourceError("to_matrix: " + std::to_string(p.size()) + " sites exceeds cap of " +
                            std::to_string(kMaxOperatorSites));
    }
    using C = std::complex<double>;
    const C i{0.0, 1.0};
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
    for (std::size_t s = 1; s <= p.size(); ++s) {
        Eigen::Matrix2cd m;
        switch (p.letter(s)) {
            case 'X':
                m << 0, 1, 1, 0;
                break;
            case 'Y':
                m << 0, -i, i, 0;
                break;
            case 'Z':
                m << 1, 0, 0, -1;
                break;
            default:
                m << 1, 0, 0, 1;
        }
        Eigen::MatrixXcd next(out.rows() * 2, out.cols() * 2);
        for (Eigen::Index r = 0; r < out.rows(); ++r) {
            for (Eigen::Index c = 0; c < out.cols(); ++c) {
                next.block<2, 2>(2 * r, 2 * c) = out(r, c) * m;
            }
        }
        out = std::move(next);
    }
    static const C kPhases[] = {C{1, 0}, C{0, 1}, C{-1, 0}, C{0, -1}};
    return kPhases[p.phase()] * out;
}

/// Direction of transport of an operator through a unitary U.
enum class Transport {
    heisenberg,    ///< P -> U^dagger P U
    schrodinger,   ///< P -> U P U^dagger
};

/// The Clifford exp(-i pi/4 G) for a Hermitian Pauli string G (sign included in G).
///
/// As an operator it equals (1 - i G)/sqrt(2).
class PauliRotation {
   public:
    PauliRotation() = default;
    explicit PauliRotation(PauliString generator) : generator_(std::move(generator)) {
        require(generator_.is_hermitian(), "rotation generator must have phase +1 or -1");
    }

    const PauliString &generator() const { return generator_; }
    std::size_t size() const { return generator_.size(); }

    /// exp(+i pi/4 G), i.e. the rotation generated by -G.
    PauliRotation inverse() const { return PauliRotation(-generator_); }

    /// Transport of `p` through this rotation. Commuting strings are unchanged;
    /// anticommuting ones pick up the generator: U^dag P U = iGP and U P U^dag = -iGP.
    PauliString conjugate(const PauliString &p, Transport direction) const {
        if (commutes(generator_, p)) {
            return p;
        }
        PauliString out = generator_ * p;
        out.multiply_phase(direction == Transport::heisenberg ? 1 : 3);
        return out;
    }

    Eigen::MatrixXcd to_matrix() const {
        const Eigen::MatrixXcd g = kising::to_matrix(generator_);
        const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(g.rows(), g.cols());
        return (id - std::complex<double>(0, 1) * g) / std::sqrt(2.0);
    }

    bool operator==(const PauliRotation &other) const = default;

   private:
    PauliString generator_;
};

}  // namespace kising
