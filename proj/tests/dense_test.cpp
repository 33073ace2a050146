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


#include <cmath>
#include <complex>
#include <random>

#include <gtest/gtest.h>

#include "kising/dense.hpp"
#include "kising/interaction_picture.hpp"

using namespace kising;

namespace {

const Amplitude I{0, 1};

StateVector from_terms(std::size_t n, std::initializer_list<std::pair<const char *, Amplitude>> terms,
                       double scale) {
    std::vector<Amplitude> amps(std::size_t{1} << n);
    for (const auto &[bits, a] : terms) amps[StateVector::basis_index(bits)] = a * scale;
    return StateVector(n, std::move(amps));
}

StateVector psi1() {
    return from_terms(4,
                      {{"0000", -1.0}, {"0101", 1.0}, {"1010", 1.0}, {"1111", 1.0},
                       {"0011", I}, {"0110", I}, {"1001", -I}, {"1100", I}},
                      1.0 / (2.0 * std::sqrt(2.0)));
}

StateVector psi2() { return from_terms(4, {{"0000", 1.0}, {"0110", -I}, {"1001", -I}, {"1111", -1.0}}, 0.5); }

StateVector random_state(std::size_t n, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    std::vector<Amplitude> amps(std::size_t{1} << n);
    for (auto &a : amps) a = {g(rng), g(rng)};
    StateVector s(n, std::move(amps));
    const double nrm = s.norm();
    for (auto &a : s.amplitudes()) a /= nrm;
    return s;
}

const ChainConfig kL4(4, Boundary::open, 2);

}  // namespace

TEST(StateVector, GoldenStatesAfterOneAndTwoKicks) {
    EXPECT_LT(evolve(1, kL4).max_abs_diff(psi1()), 1e-12);
    EXPECT_LT(evolve(2, kL4).max_abs_diff(psi2()), 1e-12);
    EXPECT_EQ(evolve(0, kL4).max_abs_diff(StateVector::zero(4)), 0.0);
}

TEST(StateVector, FloquetMatchesGateByGate) {
    for (auto b : {Boundary::open, Boundary::closed}) {
        const ChainConfig cfg(8, b, 3);
        const GateLayers layers(cfg);
        const auto seq = layers.kick_sequence();
        StateVector slow = StateVector::zero(8);
        StateVector fast = StateVector::zero(8);
        for (int k = 0; k < 5; ++k) {
            apply_rotations(slow, seq);
            apply_floquet(fast, cfg);
        }
        EXPECT_LT(slow.max_abs_diff(fast), 1e-12);
    }
}

TEST(StateVector, RotationOnBellPair) {
    auto s = from_terms(2, {{"00", 1.0}, {"11", I}}, 1.0 / std::sqrt(2.0));
    apply_pauli_rotation(s, xx_rotation(2, 1, 2));
    EXPECT_LT(s.max_abs_diff(StateVector::zero(2)), 1e-15);
}

TEST(StateVector, IdentityGeneratorIsAGlobalPhase) {
    std::mt19937_64 rng(1);
    auto s = random_state(3, rng);
    const auto before = s;
    apply_pauli_rotation(s, PauliRotation(PauliString(3)));
    for (std::uint64_t b = 0; b < s.dim(); ++b) {
        EXPECT_LT(std::abs(s[b] - std::polar(1.0, -std::numbers::pi / 4) * before[b]), 1e-15);
    }
}

TEST(StateVector, RotationMatchesMatrixAndIsUnitary) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + rng() % 6;
        PauliString g(n);
        for (std::size_t s = 1; s <= n; ++s) g.set_letter(s, "IXYZ"[rng() % 4]);
        if (rng() % 2) g = -g;
        const PauliRotation rot(g);
        auto s = random_state(n, rng);
        const Eigen::VectorXcd expect = rot.to_matrix() * s.as_eigen();
        apply_pauli_rotation(s, rot);
        ASSERT_LT((s.as_eigen() - expect).cwiseAbs().maxCoeff(), 1e-12);
        ASSERT_NEAR(s.norm(), 1.0, 1e-12);
    }
}

TEST(StateVector, PauliActionMatchesMatrix) {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + rng() % 6;
        PauliString p(n);
        for (std::size_t s = 1; s <= n; ++s) p.set_letter(s, "IXYZ"[rng() % 4]);
        p.set_phase(static_cast<int>(rng() % 4));
        const auto s = random_state(n, rng);
        const Eigen::VectorXcd expect = to_matrix(p) * s.as_eigen();
        ASSERT_LT((apply_pauli(s, p).as_eigen() - expect).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(StateVector, CapIsEnforced) {
    EXPECT_THROW(StateVector::zero(kMaxDenseSites + 1), ResourceError);
    EXPECT_THROW(apply_pauli(StateVector::zero(3), PauliString(4)), StructuralError);
}

TEST(InteractionPictureState, LadderStates) {
    // prod V_i|0> carries pairs (|00> + i|11>)/sqrt(2).
    const auto v1 = interaction_picture_state(1, kL4);
    EXPECT_LT(v1.max_abs_diff(from_terms(4, {{"0000", 1.0}, {"0110", I}}, 1.0 / std::sqrt(2.0))), 1e-12);
    const auto printed = bell_ladder_state(1, kL4, BellConvention::printed);
    ASSERT_TRUE(printed.has_value());
    EXPECT_GT(v1.max_abs_diff(*printed), 0.5);
    EXPECT_EQ(interaction_picture_state(0, kL4).max_abs_diff(StateVector::zero(4)), 0.0);
}

TEST(InteractionPictureState, EquivalenceResiduals) {
    const auto r2 = interaction_picture_equivalence(2, kL4);
    EXPECT_LT(r2.evolution, 1e-12);
    ASSERT_TRUE(r2.ladder.has_value());
    EXPECT_LT(*r2.ladder, 1e-12);
    EXPECT_LT(interaction_picture_equivalence(4, ChainConfig(8, Boundary::open, 4)).evolution, 1e-10);
    EXPECT_EQ(interaction_picture_equivalence(0, kL4).evolution, 0.0);
}

TEST(InteractionPictureState, LadderCoverage) {
    for (std::size_t len : {4, 6, 8, 10}) {
        for (std::size_t m = 1; m <= len / 2; ++m) {
            const ChainConfig cfg(len, Boundary::open, m);
            for (std::size_t n = 0; n <= m + 2; ++n) {
                const auto ladder = bell_ladder_state(n, cfg);
                const bool covered = n <= m + 1 || (!cfg.equal_blocks() && m >= 2 && m + 2 <= cfg.block_b());
                ASSERT_EQ(ladder.has_value(), covered) << len << " " << m << " " << n;
                if (ladder) {
                    ASSERT_LT(interaction_picture_state(n, cfg).max_abs_diff(*ladder), 1e-12)
                        << "L=" << len << " M=" << m << " n=" << n;
                }
            }
        }
    }
    EXPECT_FALSE(bell_ladder_state(1, ChainConfig(4, Boundary::closed, 2)).has_value());
}

TEST(InteractionPictureState, PrintedConventionIsTheConjugateLadder) {
    // For n <= M the printed pairs differ only by Z on each A_j.
    const ChainConfig cfg(8, Boundary::open, 4);
    for (std::size_t n = 1; n <= 4; ++n) {
        PauliString z(8);
        for (std::size_t j = 1; j <= n; ++j) z.set_letter(cfg.site_a(j), 'Z');
        const auto printed = bell_ladder_state(n, cfg, BellConvention::printed);
        ASSERT_TRUE(printed.has_value());
        EXPECT_LT(apply_pauli(interaction_picture_state(n, cfg), z).max_abs_diff(*printed), 1e-12);
    }
}

TEST(ReducedDensityMatrix, GoldenPairs) {
    const auto rho1 = reduced_density_matrix(psi1(), {2, 3});
    EXPECT_LT((rho1.rho - Eigen::Matrix4cd::Identity() / 4.0).cwiseAbs().maxCoeff(), 1e-12);
    const auto rho2 = reduced_density_matrix(psi2(), {2, 3});
    Eigen::Matrix4cd expect = Eigen::Matrix4cd::Zero();
    expect(0, 0) = 0.5;
    expect(3, 3) = 0.5;
    expect(0, 3) = 0.5 * I;
    expect(3, 0) = -0.5 * I;
    EXPECT_LT((rho2.rho - expect).cwiseAbs().maxCoeff(), 1e-12);
    const auto single = reduced_density_matrix(StateVector::zero(5), {4});
    EXPECT_NEAR(single.rho(0, 0).real(), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(single.rho(1, 1)), 0.0, 1e-15);
    EXPECT_THROW(reduced_density_matrix(StateVector::zero(4), {2, 2}), StructuralError);
}

TEST(ReducedDensityMatrix, RetainedSiteOrderFollowsTheList) {
    const auto s = from_terms(3, {{"100", 1.0}}, 1.0);
    const auto rho = reduced_density_matrix(s, {3, 1});
    EXPECT_NEAR(rho.rho(1, 1).real(), 1.0, 1e-15);  // |0>_3 |1>_1
}

TEST(Entropy, Values) {
    EXPECT_NEAR(block_entropy(psi2(), 2), 2.0, 1e-12);
    EXPECT_NEAR(block_entropy(StateVector::zero(6), 3), 0.0, 1e-15);
    EXPECT_NEAR(block_entropy(evolve(15, ChainConfig(20, Boundary::open, 10)), 10), 5.0, 1e-9);
}

TEST(Entropy, DegenerateSpectrumAtTwentySites) {
    // 16 equal weights in a 1024-dimensional reduced state: the Hermitian QR
    // iteration does not converge here and the singular-value path takes over.
    EXPECT_NEAR(block_entropy(evolve(16, ChainConfig(20, Boundary::open, 10)), 10), 4.0, 1e-9);
}

TEST(Entropy, SymmetricAcrossTheCut) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 2 + rng() % 8;
        const auto s = random_state(n, rng);
        for (std::size_t m = 1; m < n; ++m) {
            std::vector<std::size_t> a, b;
            for (std::size_t k = 1; k <= n; ++k) (k <= m ? a : b).push_back(k);
            const double sa = von_neumann_entropy(reduced_density_matrix(s, a));
            const double sb = von_neumann_entropy(reduced_density_matrix(s, b));
            ASSERT_NEAR(sa, sb, 1e-9);
            ASSERT_NEAR(block_entropy(s, m), sa, 1e-9);
        }
    }
}

TEST(Entropy, EigenvalueClamping) {
    Eigen::VectorXd ev(4);
    ev << 0.5, 0.5, -1e-15, 1e-14;
    EXPECT_NEAR(entropy_from_eigenvalues(ev), 1.0, 1e-12);
    EXPECT_FALSE(std::isnan(entropy_from_eigenvalues(ev)));
    Eigen::VectorXd pure(2);
    pure << 1.0 + 1e-16, -1e-17;
    EXPECT_NEAR(entropy_from_eigenvalues(pure), 0.0, 1e-15);
}

TEST(Concurrence, Values) {
    EXPECT_NEAR(concurrence(reduced_density_matrix(psi2(), {2, 3})), 1.0, 1e-12);
    EXPECT_NEAR(concurrence({{1, 2}, Eigen::Matrix4cd::Identity() / 4.0}), 0.0, 1e-12);
    EXPECT_NEAR(concurrence({{1, 2}, bell_projector()}), 1.0, 1e-12);
    Eigen::Matrix4cd bad = Eigen::Matrix4cd::Identity() / 4.0;
    bad(0, 1) = 0.1;
    EXPECT_THROW(concurrence({{1, 2}, bad}), StructuralError);
}

TEST(Concurrence, ScanOnSmallChains) {
    const auto open = concurrence_scan(kL4, 4, {{2, 3}});
    ASSERT_EQ(open.size(), 5u);
    EXPECT_NEAR(open[2].value, 1.0, 1e-9);
    EXPECT_NEAR(open[4].value, 0.0, 1e-9);
    for (const auto &c : concurrence_scan(ChainConfig(8, Boundary::closed, 4), 16)) {
        ASSERT_NEAR(c.value, 0.0, 1e-9) << c.site_i << "," << c.site_j << " n=" << c.n;
    }
    EXPECT_EQ(concurrence_scan(kL4, 0).size(), 6u);
}

TEST(Channel, PrintedKrausSum) {
    const auto check = pauli_channel_check(printed_kraus_terms());
    EXPECT_LT(check.residual, 1e-12);
    EXPECT_LT((check.reconstructed - Eigen::Matrix4cd::Identity() / 4.0).cwiseAbs().maxCoeff(), 1e-12);
    auto dropped = printed_kraus_terms();
    dropped.pop_back();
    for (auto &t : dropped) t.probability = 1.0 / 3.0;
    EXPECT_GT(pauli_channel_check(dropped).residual, 0.05);
    const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
    const std::vector<KrausTerm> identity{{1.0, id, id}};
    EXPECT_LT((apply_kraus(identity, bell_projector()) - bell_projector()).cwiseAbs().maxCoeff(), 1e-15);
}
