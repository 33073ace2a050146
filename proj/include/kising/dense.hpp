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
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "kising/chain.hpp"
#include "kising/detail/basis_action.hpp"
#include "kising/errors.hpp"
#include "kising/interaction_picture.hpp"
#include "kising/pauli.hpp"

namespace kising {

using Amplitude = std::complex<double>;

/// 2^L amplitudes; site 1 is the most significant bit of the basis index and
/// |0> is the +1 eigenstate of sigma^z.
class StateVector {
   public:
    StateVector(std::size_t num_sites, std::vector<Amplitude> amplitudes)
        : num_sites_(num_sites), amps_(std::move(amplitudes)) {
        check_cap(num_sites);
        require(amps_.size() == (std::size_t{1} << num_sites),
                "amplitude count does not match 2^L");
    }

    /// |0...0>
    static StateVector zero(std::size_t num_sites) {
        check_cap(num_sites);
        std::vector<Amplitude> amps(std::size_t{1} << num_sites);
        amps[0] = 1.0;
        return StateVector(num_sites, std::move(amps));
    }

    /// Basis index of a bit string written site 1 first, e.g. "0110".
    static std::uint64_t basis_index(std::string_view bits) {
        std::uint64_t b = 0;
        for (char c : bits) {
            require(c == '0' || c == '1', "basis labels use only '0' and '1'");
            b = (b << 1) | static_cast<std::uint64_t>(c == '1');
        }
        return b;
    }

    std::size_t num_sites() const { return num_sites_; }
    std::uint64_t dim() const { return amps_.size(); }

    Amplitude operator[](std::uint64_t b) const { return amps_[b]; }
    Amplitude &operator[](std::uint64_t b) { return amps_[b]; }
    Amplitude at(std::string_view bits) const {
        require(bits.size() == num_sites_, "basis label length mismatch");
        return amps_[basis_index(bits)];
    }

    std::span<const Amplitude> amplitudes() const { return amps_; }
    std::span<Amplitude> amplitudes() { return amps_; }

    double norm() const {
        double s = 0;
        for (const auto &a : amps_) s += std::norm(a);
        return std::sqrt(s);
    }

    Amplitude inner(const StateVector &other) const {
        require(other.num_sites_ == num_sites_, "state lengths differ");
        Amplitude s = 0;
        for (std::size_t b = 0; b < amps_.size(); ++b) s += std::conj(amps_[b]) * other.amps_[b];
        return s;
    }

    /// Max over basis states of |a_b - b_b|; no global-phase quotient.
    double max_abs_diff(const StateVector &other) const {
        require(other.num_sites_ == num_sites_, "state lengths differ");
        double m = 0;
        for (std::size_t b = 0; b < amps_.size(); ++b) m = std::max(m, std::abs(amps_[b] - other.amps_[b]));
        return m;
    }

    /// Euclidean distance ||this - other||.
    double distance(const StateVector &other) const {
        require(other.num_sites_ == num_sites_, "state lengths differ");
        double s = 0;
        for (std::size_t b = 0; b < amps_.size(); ++b) s += std::norm(amps_[b] - other.amps_[b]);
        return std::sqrt(s);
    }

    Eigen::Map<const Eigen::VectorXcd> as_eigen() const {
        return {amps_.data(), static_cast<Eigen::Index>(amps_.size())};
    }

   private:
    static void check_cap(std::size_t num_sites) {
        if (num_sites > kMaxDenseSites) {
            throw ResourceError("state vector limited to " + std::to_string(kMaxDenseSites) +
                                " sites, requested " + std::to_string(num_sites));
        }
    }

    std::size_t num_sites_;
    std::vector<Amplitude> amps_;
};

/// P|psi>
inline StateVector apply_pauli(const StateVector &state, const PauliString &p) {
    require(p.size() == state.num_sites(), "Pauli string and state differ in length");
    const detail::BasisAction act(p);
    std::vector<Amplitude> out(state.dim());
    for (std::uint64_t b = 0; b < state.dim(); ++b) {
        out[b ^ act.x_mask] = act.coefficient(b) * state[b];
    }
    return StateVector(state.num_sites(), std::move(out));
}

/// |psi> -> (|psi> - i G|psi>)/sqrt(2), in place.
inline void apply_pauli_rotation(StateVector &state, const PauliRotation &rot) {
    require(rot.size() == state.num_sites(), "rotation and state differ in length");
    const detail::BasisAction act(rot.generator());
    const Amplitude minus_i{0, -1};
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    auto amps = state.amplitudes();
    if (act.x_mask == 0) {
        for (std::uint64_t b = 0; b < amps.size(); ++b) {
            amps[b] *= (1.0 + minus_i * act.coefficient(b)) * inv_sqrt2;
        }
        return;
    }
    const std::uint64_t top = std::uint64_t{1} << (63 - std::countl_zero(act.x_mask));
    for (std::uint64_t b = 0; b < amps.size(); ++b) {
        if (b & top) continue;
        const std::uint64_t c = b ^ act.x_mask;
        const Amplitude ab = amps[b], ac = amps[c];
        amps[b] = (ab + minus_i * act.coefficient(c) * ac) * inv_sqrt2;
        amps[c] = (ac + minus_i * act.coefficient(b) * ab) * inv_sqrt2;
    }
}

inline void apply_rotations(StateVector &state, std::span<const PauliRotation> acting_order) {
    for (const auto &r : acting_order) apply_pauli_rotation(state, r);
}

/// One kick: all Z rotations (as a single diagonal pass), then every XX bond.
inline void apply_floquet(StateVector &state, const ChainConfig &cfg) {
    require(state.num_sites() == cfg.length(), "state length does not match the chain");
    const std::size_t n = cfg.length();
    // prod_s exp(-i pi/4 Z_s) on |b> is exp(-i pi/4 (L - 2 popcount(b))).
    std::vector<Amplitude> diag(n + 1);
    for (std::size_t w = 0; w <= n; ++w) {
        diag[w] = std::polar(1.0, -std::numbers::pi / 4 * (static_cast<double>(n) - 2.0 * static_cast<double>(w)));
    }
    auto amps = state.amplitudes();
    for (std::uint64_t b = 0; b < amps.size(); ++b) {
        amps[b] *= diag[static_cast<std::size_t>(std::popcount(b))];
    }
    for (auto [i, j] : cfg.bonds()) {
        apply_pauli_rotation(state, xx_rotation(n, i, j));
    }
}

/// U^n |0...0>
inline StateVector evolve(std::size_t n, const ChainConfig &cfg) {
    StateVector state = StateVector::zero(cfg.length());
    for (std::size_t k = 0; k < n; ++k) apply_floquet(state, cfg);
    return state;
}

/// Applies U_A U_B = X_AA Z_A X_BB Z_B once.
inline void apply_block_unitaries(StateVector &state, const ChainConfig &cfg) {
    const GateLayers layers(cfg);
    apply_rotations(state, layers.block_sequence(Block::A));
    apply_rotations(state, layers.block_sequence(Block::B));
}

/// Phase convention of the Bell pairs used by bell_ladder_state.
enum class BellConvention {
    /// Pairs exactly as produced by prod_i V_i |0>: (|00> + i|11>)/sqrt(2).
    interaction_picture,
    /// Pairs as printed, Phi = (|00> - i|11>)/sqrt(2), Phi' = (|01> - i|10>)/sqrt(2).
    printed,
};

namespace detail {

/// A factor of a product state: amplitudes over a few sites, listed as
/// (pattern, amplitude) where pattern bit k (from the left) belongs to sites[k].
struct ProductFactor {
    std::vector<std::size_t> sites;
    std::vector<std::pair<std::string, Amplitude>> terms;
};

inline StateVector product_state(std::size_t num_sites, std::span<const ProductFactor> factors) {
    std::vector<std::pair<std::uint64_t, Amplitude>> entries{{0, 1.0}};
    for (const auto &f : factors) {
        std::vector<std::pair<std::uint64_t, Amplitude>> next;
        for (const auto &[b, a] : entries) {
            for (const auto &[pattern, amp] : f.terms) {
                std::uint64_t nb = b;
                for (std::size_t k = 0; k < f.sites.size(); ++k) {
                    if (pattern[k] == '1') nb |= std::uint64_t{1} << (num_sites - f.sites[k]);
                }
                next.emplace_back(nb, a * amp);
            }
        }
        entries = std::move(next);
    }
    StateVector out(num_sites, std::vector<Amplitude>(std::size_t{1} << num_sites));
    for (const auto &[b, a] : entries) out[b] += a;
    return out;
}

inline const Amplitude kI{0, 1};

/// Two-site pair state (|p q> terms) scaled by 1/sqrt(2).
inline std::vector<std::pair<std::string, Amplitude>> pair_terms(std::string first, Amplitude c0,
                                                                 std::string second, Amplitude c1) {
    const double s = 1.0 / std::numbers::sqrt2;
    return {{std::move(first), c0 * s}, {std::move(second), c1 * s}};
}

}  // namespace detail

/// The interaction-picture reference state prod_{i<=n} V_i |0...0>, built
/// directly from Bell pairs without evolving.
///
/// Coverage: 0 <= n <= M (pairs on A_j B_j, j <= n); n = M+1 for either block
/// split; n = M+2 for unequal blocks (interaction_picture convention only).
/// Returns nullopt outside coverage or for closed chains.
inline std::optional<StateVector> bell_ladder_state(
    std::size_t n, const ChainConfig &cfg,
    BellConvention convention = BellConvention::interaction_picture) {
    if (cfg.boundary() != Boundary::open) return std::nullopt;
    const std::size_t m = cfg.block_a();
    const bool printed = convention == BellConvention::printed;
    const Amplitude pair_phase = printed ? -detail::kI : detail::kI;
    std::vector<detail::ProductFactor> factors;
    auto add_ladder = [&](std::size_t count) {
        for (std::size_t j = 1; j <= count; ++j) {
            factors.push_back({{cfg.site_a(j), cfg.site_b(j)},
                               detail::pair_terms("00", 1.0, "11", pair_phase)});
        }
    };
    if (n <= m) {
        add_ladder(n);
    } else if (n == m + 1 && cfg.equal_blocks()) {
        add_ladder(m - 1);
    } else if (n == m + 1) {
        // (|0>_{A_M} Phi_{B_M B_M+1} + |1>_{A_M} Phi'_{B_M B_M+1}) / sqrt(2)
        add_ladder(m - 1);
        const Amplitude odd_phase = printed ? -detail::kI : detail::kI;
        const double h = 0.5;
        factors.push_back({{cfg.site_a(m), cfg.site_b(m), cfg.site_b(m + 1)},
                           {{"000", h}, {"011", -detail::kI * h}, {"101", h}, {"110", odd_phase * h}}});
    } else if (n == m + 2 && !printed && m >= 2 && m + 2 <= cfg.block_b()) {
        add_ladder(m - 2);
        // Tail over (A_{M-1}, A_M, B_{M-1}, B_M, B_{M+1}, B_{M+2}):
        // 1/2 sum_{a,b} |a>_{A_{M-1}} |b>_{A_M} P_ab(B_{M-1}, B_{M+2}) Q_ab(B_M, B_{M+1}).
        using Terms = std::vector<std::pair<std::string, Amplitude>>;
        const Amplitude i = detail::kI;
        const Terms phi = detail::pair_terms("00", 1.0, "11", -i);
        const Terms phi_conj = detail::pair_terms("00", 1.0, "11", i);
        const Terms phi_odd = detail::pair_terms("01", 1.0, "10", -i);
        const Terms phi_odd_conj = detail::pair_terms("01", 1.0, "10", i);
        struct Branch {
            std::string ab;
            Amplitude sign;
            const Terms *outer;
            const Terms *inner;
        };
        const Branch branches[] = {{"00", 1.0, &phi, &phi},
                                   {"10", 1.0, &phi_odd_conj, &phi},
                                   {"01", 1.0, &phi_conj, &phi_odd_conj},
                                   {"11", -1.0, &phi_odd, &phi_odd_conj}};
        detail::ProductFactor tail{{cfg.site_a(m - 1), cfg.site_a(m), cfg.site_b(m - 1), cfg.site_b(m),
                                    cfg.site_b(m + 1), cfg.site_b(m + 2)},
                                   {}};
        for (const auto &br : branches) {
            for (const auto &[po, ao] : *br.outer) {
                for (const auto &[pi, ai] : *br.inner) {
                    // pattern order: A_{M-1} A_M B_{M-1} B_M B_{M+1} B_{M+2}
                    std::string pat = br.ab + po[0] + pi[0] + pi[1] + po[1];
                    tail.terms.emplace_back(std::move(pat), 0.5 * br.sign * ao * ai);
                }
            }
        }
        factors.push_back(std::move(tail));
    } else {
        return std::nullopt;
    }
    return detail::product_state(cfg.length(), factors);
}

/// prod_{i<=n} V_i |0...0> using the recursively derived V_i.
inline StateVector interaction_picture_state(std::size_t n, const ChainConfig &cfg) {
    StateVector state = StateVector::zero(cfg.length());
    if (n == 0) return state;
    for (const auto &v : interaction_operators(n, cfg)) apply_rotations(state, v.factors);
    return state;
}

struct EquivalenceResidual {
    /// || U^n|0> - U_A^n U_B^n prod V_i |0> ||
    double evolution = 0.0;
    /// || prod V_i |0> - bell_ladder_state(n) ||, where the ladder state is covered.
    std::optional<double> ladder;
};

inline EquivalenceResidual interaction_picture_equivalence(std::size_t n, const ChainConfig &cfg) {
    const StateVector direct = evolve(n, cfg);
    const StateVector tilde = interaction_picture_state(n, cfg);
    StateVector rebuilt = tilde;
    for (std::size_t k = 0; k < n; ++k) apply_block_unitaries(rebuilt, cfg);
    EquivalenceResidual out;
    out.evolution = direct.distance(rebuilt);
    if (auto ladder = bell_ladder_state(n, cfg)) out.ladder = tilde.distance(*ladder);
    return out;
}

/// Reduced density matrix on an ordered list of retained sites; sites[0] is the
/// most significant bit of the row index.
struct DensityMatrix {
    std::vector<std::size_t> sites;
    Eigen::MatrixXcd rho;

    /// Throws StructuralError unless rho is Hermitian with unit trace (to `tol`).
    void validate(double tol = 1e-10) const {
        require(rho.rows() == rho.cols(), "density matrix must be square");
        require((rho - rho.adjoint()).cwiseAbs().maxCoeff() <= tol, "density matrix is not Hermitian");
        require(std::abs(rho.trace() - Amplitude(1.0)) <= tol, "density matrix trace differs from 1");
    }
};

namespace detail {

/// Amplitudes reshaped to 2^k x 2^(L-k) with the retained sites as row index.
inline Eigen::MatrixXcd split_amplitudes(const StateVector &state, std::span<const std::size_t> sites) {
    const std::size_t n = state.num_sites();
    const std::size_t k = sites.size();
    std::vector<bool> kept(n + 1, false);
    for (std::size_t s : sites) {
        require(s >= 1 && s <= n, "site out of range: " + std::to_string(s));
        require(!kept[s], "duplicate site " + std::to_string(s));
        kept[s] = true;
    }
    std::vector<std::size_t> rest;
    for (std::size_t s = 1; s <= n; ++s) {
        if (!kept[s]) rest.push_back(s);
    }
    Eigen::MatrixXcd psi(Eigen::Index{1} << k, Eigen::Index{1} << (n - k));
    for (std::uint64_t b = 0; b < state.dim(); ++b) {
        std::uint64_t r = 0, c = 0;
        for (std::size_t s : sites) r = (r << 1) | ((b >> (n - s)) & 1);
        for (std::size_t s : rest) c = (c << 1) | ((b >> (n - s)) & 1);
        psi(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = state[b];
    }
    return psi;
}

}  // namespace detail

inline DensityMatrix reduced_density_matrix(const StateVector &state, std::vector<std::size_t> sites) {
    require(!sites.empty(), "reduced density matrix needs at least one site");
    if (sites.size() > kMaxReducedSites) {
        throw ResourceError("reduced density matrix limited to " + std::to_string(kMaxReducedSites) +
                            " sites");
    }
    const Eigen::MatrixXcd psi = detail::split_amplitudes(state, sites);
    Eigen::MatrixXcd lower = Eigen::MatrixXcd::Zero(psi.rows(), psi.rows());
    lower.selfadjointView<Eigen::Lower>().rankUpdate(psi);
    return {std::move(sites), Eigen::MatrixXcd(lower.selfadjointView<Eigen::Lower>())};
}

/// -sum lambda log2 lambda, with eigenvalues below `clamp` treated as zero.
inline double entropy_from_eigenvalues(const Eigen::VectorXd &eigenvalues, double clamp = 1e-12) {
    double s = 0;
    for (double lambda : eigenvalues) {
        if (lambda > clamp) s -= lambda * std::log2(lambda);
    }
    return s;
}

/// Eigenvalues of a Hermitian positive semidefinite matrix. The tridiagonal QR
/// iteration can stall on large, highly degenerate spectra (flat entanglement
/// spectra are exactly that); singular values are used then.
inline Eigen::VectorXd density_eigenvalues(const Eigen::MatrixXcd &rho) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho, Eigen::EigenvaluesOnly);
    if (solver.info() == Eigen::Success) return solver.eigenvalues();
    return Eigen::BDCSVD<Eigen::MatrixXcd>(rho).singularValues();
}

inline double von_neumann_entropy(const DensityMatrix &dm) {
    return entropy_from_eigenvalues(density_eigenvalues(dm.rho));
}

/// Entropy in ebits of the first `block_size` sites; diagonalizes the smaller
/// of the two reduced density matrices.
inline double block_entropy(const StateVector &state, std::size_t block_size) {
    const std::size_t n = state.num_sites();
    require(block_size <= n, "block larger than the chain");
    if (block_size == 0 || block_size == n) return 0.0;
    const Eigen::Index rows = Eigen::Index{1} << block_size;
    const Eigen::Index cols = Eigen::Index{1} << (n - block_size);
    // Site 1 is the most significant bit, so the block index is the row of a
    // row-major 2^M x 2^N reshape.
    using RowMajor = Eigen::Matrix<Amplitude, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    const Eigen::Map<const RowMajor> psi(state.amplitudes().data(), rows, cols);
    Eigen::MatrixXcd rho;
    if (rows <= cols) {
        rho = Eigen::MatrixXcd::Zero(rows, rows);
        rho.selfadjointView<Eigen::Lower>().rankUpdate(psi);
    } else {
        rho = Eigen::MatrixXcd::Zero(cols, cols);
        rho.selfadjointView<Eigen::Lower>().rankUpdate(psi.transpose());
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver;
    solver.compute(rho, Eigen::EigenvaluesOnly);  // reads the lower triangle only
    if (solver.info() == Eigen::Success) return entropy_from_eigenvalues(solver.eigenvalues());
    // No convergence: Schmidt weights are the squared singular values of psi.
    const Eigen::MatrixXcd dense = psi;
    const Eigen::VectorXd sv = Eigen::BDCSVD<Eigen::MatrixXcd>(dense).singularValues();
    return entropy_from_eigenvalues(sv.cwiseAbs2());
}

/// Wootters concurrence of a two-qubit density matrix.
inline double concurrence(const DensityMatrix &dm) {
    require(dm.rho.rows() == 4 && dm.rho.cols() == 4, "concurrence needs a 4x4 density matrix");
    dm.validate();
    Eigen::Matrix4cd yy = Eigen::Matrix4cd::Zero();
    yy(0, 3) = -1;
    yy(1, 2) = 1;
    yy(2, 1) = 1;
    yy(3, 0) = -1;
    const Eigen::Matrix4cd rho = dm.rho;
    const Eigen::Matrix4cd flipped = yy * rho.conjugate() * yy;
    // The square roots of the eigenvalues of rho * flipped are the eigenvalues of
    // sqrt(sqrt(rho) flipped sqrt(rho)), which is Hermitian.
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(rho);
    const Eigen::Vector4d ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    const Eigen::Matrix4cd root = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
    const Eigen::Matrix4cd r = root * flipped * root;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> er(0.5 * (r + r.adjoint()), Eigen::EigenvaluesOnly);
    Eigen::Vector4d lambda = er.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    std::sort(lambda.data(), lambda.data() + 4, std::greater<>());
    return std::max(0.0, lambda(0) - lambda(1) - lambda(2) - lambda(3));
}

struct ConcurrenceSample {
    std::size_t site_i;
    std::size_t site_j;
    std::size_t n;
    double value;
};

/// (A_i, B_i) for i = 1..M.
inline std::vector<std::pair<std::size_t, std::size_t>> interface_pairs(const ChainConfig &cfg) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t j = 1; j <= cfg.block_a(); ++j) out.emplace_back(cfg.site_a(j), cfg.site_b(j));
    return out;
}

inline std::vector<std::pair<std::size_t, std::size_t>> all_pairs(std::size_t length) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 1; i <= length; ++i)
        for (std::size_t j = i + 1; j <= length; ++j) out.emplace_back(i, j);
    return out;
}

/// Concurrence of every listed pair for n = 0..n_max, ordered by n then pair.
/// An empty pair list scans all pairs.
inline std::vector<ConcurrenceSample> concurrence_scan(const ChainConfig &cfg, std::size_t n_max,
                                                      std::vector<std::pair<std::size_t, std::size_t>> pairs = {}) {
    if (pairs.empty()) pairs = all_pairs(cfg.length());
    std::vector<ConcurrenceSample> out;
    StateVector state = StateVector::zero(cfg.length());
    for (std::size_t n = 0; n <= n_max; ++n) {
        if (n > 0) apply_floquet(state, cfg);
        for (auto [i, j] : pairs) {
            out.push_back({i, j, n, concurrence(reduced_density_matrix(state, {i, j}))});
        }
    }
    return out;
}

/// One term p * (Q^A (x) Q^B) rho (Q^A (x) Q^B)^dag of a local Kraus sum.
struct KrausTerm {
    double probability;
    Eigen::Matrix2cd on_a;
    Eigen::Matrix2cd on_b;
};

/// The four terms for the central pair of L = 4 after one kick, p_k = 1/4:
/// Q_1 = exp(-i pi Z/4) on both sites, with sigma^x prepended on A, B, or both.
inline std::vector<KrausTerm> printed_kraus_terms() {
    const Amplitude i{0, 1};
    Eigen::Matrix2cd rz;
    rz << std::exp(-i * std::numbers::pi / 4.0), 0, 0, std::exp(i * std::numbers::pi / 4.0);
    Eigen::Matrix2cd x;
    x << 0, 1, 1, 0;
    return {{0.25, rz, rz}, {0.25, x * rz, rz}, {0.25, rz, x * rz}, {0.25, x * rz, x * rz}};
}

/// (|00> - i|11>)/sqrt(2) as a projector.
inline Eigen::Matrix4cd bell_projector() {
    Eigen::Vector4cd phi = Eigen::Vector4cd::Zero();
    phi(0) = 1.0 / std::numbers::sqrt2;
    phi(3) = Amplitude(0, -1.0 / std::numbers::sqrt2);
    return phi * phi.adjoint();
}

inline Eigen::Matrix4cd apply_kraus(std::span<const KrausTerm> terms, const Eigen::Matrix4cd &rho) {
    Eigen::Matrix4cd out = Eigen::Matrix4cd::Zero();
    for (const auto &t : terms) {
        Eigen::Matrix4cd k;
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) k.block<2, 2>(2 * r, 2 * c) = t.on_a(r, c) * t.on_b;
        out += t.probability * k * rho * k.adjoint();
    }
    return out;
}

struct ChannelCheck {
    Eigen::Matrix4cd reconstructed;
    Eigen::Matrix4cd simulated;
    double residual;
};

/// Rebuilds rho_23 of the L = 4 open chain after one kick from a Kraus sum acting
/// on the Bell projector and compares it with the partial trace of U|0000>.
inline ChannelCheck pauli_channel_check(std::span<const KrausTerm> terms) {
    const ChainConfig cfg(4, Boundary::open, 2);
    const Eigen::Matrix4cd simulated = reduced_density_matrix(evolve(1, cfg), {2, 3}).rho;
    const Eigen::Matrix4cd rebuilt = apply_kraus(terms, bell_projector());
    return {rebuilt, simulated, (rebuilt - simulated).cwiseAbs().maxCoeff()};
}

}  // namespace kising
