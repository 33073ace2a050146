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


#include <random>
#include <string>

#include <Eigen/Sparse>
#include <gtest/gtest.h>

#include "kising/pauli.hpp"

using namespace kising;

namespace {

PauliString random_pauli(std::size_t n, std::mt19937_64 &rng) {
    PauliString p(n);
    for (std::size_t s = 1; s <= n; ++s) p.set_letter(s, "IXYZ"[rng() % 4]);
    p.set_phase(static_cast<int>(rng() % 4));
    return p;
}

// All 4^n * 4 strings on n sites.
std::vector<PauliString> all_paulis(std::size_t n) {
    std::vector<PauliString> out;
    std::size_t count = std::size_t{1} << (2 * n);
    for (std::size_t code = 0; code < count; ++code) {
        for (int k = 0; k < 4; ++k) {
            PauliString p(n);
            for (std::size_t s = 0; s < n; ++s) p.set_letter(s + 1, "IXYZ"[(code >> (2 * s)) & 3]);
            p.set_phase(k);
            out.push_back(p);
        }
    }
    return out;
}

}  // namespace

TEST(PauliString, ParseAndRender) {
    EXPECT_EQ(PauliString::from_str("+iXYZI").str(), "+iXYZI");
    EXPECT_EQ(PauliString::from_str("-ZZ").str(), "-ZZ");
    EXPECT_EQ(PauliString::from_str("XI").str(), "+XI");
    EXPECT_EQ(PauliString::from_str("-iX_Z").str(), "-iXIZ");
    EXPECT_THROW(PauliString::from_str("XQ"), StructuralError);
}

TEST(PauliString, SingleSiteProducts) {
    EXPECT_EQ(PauliString::from_str("X") * PauliString::from_str("Y"), PauliString::from_str("+iZ"));
    EXPECT_EQ(PauliString::from_str("Y") * PauliString::from_str("X"), PauliString::from_str("-iZ"));
    EXPECT_EQ(PauliString::from_str("Z") * PauliString::from_str("Z"), PauliString::from_str("I"));
    EXPECT_EQ(PauliString::from_str("Y") * PauliString::from_str("Z"), PauliString::from_str("+iX"));
}

TEST(PauliString, LengthMismatchIsStructural) {
    EXPECT_THROW(PauliString::from_str("XX") * PauliString::from_str("X"), StructuralError);
}

TEST(PauliString, SiteOutOfRange) {
    PauliString p(3);
    EXPECT_THROW(p.set_letter(0, 'X'), StructuralError);
    EXPECT_THROW(p.set_letter(4, 'X'), StructuralError);
}

TEST(PauliString, ExhaustiveProductsAgainstMatricesUpToThreeSites) {
    for (std::size_t n = 1; n <= 3; ++n) {
        const auto ps = all_paulis(n);
        for (const auto &p : ps) {
            const auto mp = to_matrix(p);
            for (const auto &q : ps) {
                if (q.phase() != 0) continue;  // phases only add; keep the loop small
                const auto pq = p * q;
                ASSERT_LT((to_matrix(pq) - mp * to_matrix(q)).cwiseAbs().maxCoeff(), 1e-14)
                    << p.str() << " * " << q.str();
                const bool anti = (mp * to_matrix(q) + to_matrix(q) * mp).cwiseAbs().maxCoeff() < 1e-14;
                ASSERT_EQ(commutes(p, q), !anti) << p.str() << " , " << q.str();
            }
        }
    }
}

TEST(PauliString, RandomProductsAgainstMatrices) {
    std::mt19937_64 rng(20261015);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 1 + rng() % 10;
        const auto p = random_pauli(n, rng);
        const auto q = random_pauli(n, rng);
        // Sparse product: each Pauli matrix has one entry per column.
        using Sparse = Eigen::SparseMatrix<std::complex<double>>;
        const Sparse a = to_matrix(p).sparseView();
        const Sparse b = to_matrix(q).sparseView();
        const double diff = (to_matrix(p * q) - Eigen::MatrixXcd(a * b)).cwiseAbs().maxCoeff();
        ASSERT_LT(diff, 1e-12) << p.str() << " * " << q.str();
    }
}

TEST(PauliString, WideStringsCrossWordBoundaries) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 60 + rng() % 140;
        const auto p = random_pauli(n, rng);
        const auto q = random_pauli(n, rng);
        // Phase exponent from letter-by-letter multiplication.
        int k = p.phase() + q.phase();
        for (std::size_t s = 1; s <= n; ++s) {
            const auto a = PauliString::single(1, 1, p.letter(s)) * PauliString::single(1, 1, q.letter(s));
            k += a.phase();
        }
        const auto pq = p * q;
        ASSERT_EQ(pq.phase(), ((k % 4) + 4) % 4);
    }
}

TEST(PauliRotation, HeisenbergConjugationRules) {
    // U = exp(-i pi/4 Z): U^dag X U = -Y, U^dag Y U = X.
    const PauliRotation rz(PauliString::from_str("Z"));
    EXPECT_EQ(rz.conjugate(PauliString::from_str("X"), Transport::heisenberg), PauliString::from_str("-Y"));
    EXPECT_EQ(rz.conjugate(PauliString::from_str("Y"), Transport::heisenberg), PauliString::from_str("X"));
    EXPECT_EQ(rz.conjugate(PauliString::from_str("X"), Transport::schrodinger), PauliString::from_str("Y"));
    EXPECT_EQ(rz.conjugate(PauliString::from_str("Z"), Transport::heisenberg), PauliString::from_str("Z"));
}

TEST(PauliRotation, NonHermitianGeneratorRejected) {
    EXPECT_THROW(PauliRotation(PauliString::from_str("+iX")), StructuralError);
}

TEST(PauliRotation, ConjugationMatchesMatrices) {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 1 + rng() % 5;
        auto g = random_pauli(n, rng);
        g.set_phase(0);
        if (g.weight() == 0) continue;
        const PauliRotation rot(g);
        const auto p = random_pauli(n, rng);
        const auto u = rot.to_matrix();
        const auto h = rot.conjugate(p, Transport::heisenberg);
        const auto s = rot.conjugate(p, Transport::schrodinger);
        ASSERT_LT((to_matrix(h) - u.adjoint() * to_matrix(p) * u).cwiseAbs().maxCoeff(), 1e-12);
        ASSERT_LT((to_matrix(s) - u * to_matrix(p) * u.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
        ASSERT_LT((u * u.adjoint() - Eigen::MatrixXcd::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(PauliRotation, InverseUndoesConjugation) {
    const PauliRotation rot(PauliString::from_str("XXZ"));
    const auto p = PauliString::from_str("YIX");
    EXPECT_EQ(rot.inverse().conjugate(rot.conjugate(p, Transport::heisenberg), Transport::heisenberg), p);
}
