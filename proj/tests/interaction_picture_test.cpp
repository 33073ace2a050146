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


#include <gtest/gtest.h>

#include "kising/dense.hpp"
#include "kising/interaction_picture.hpp"

using namespace kising;

namespace {

PauliString labelled(const ChainConfig &cfg, std::initializer_list<std::tuple<Block, std::size_t, char>> letters) {
    PauliString p(cfg.length());
    for (const auto &[block, j, c] : letters) p.set_letter(cfg.site(block, j), c);
    return p;
}

}  // namespace

TEST(Conjugation, ZRotationRules) {
    EXPECT_EQ(conjugate_by_z_rotation(PauliString::from_str("X"), 1), PauliString::from_str("-Y"));
    EXPECT_EQ(conjugate_by_z_rotation(PauliString::from_str("Y"), 1), PauliString::from_str("X"));
    EXPECT_EQ(conjugate_by_z_rotation(PauliString::from_str("Z"), 1), PauliString::from_str("Z"));
    EXPECT_THROW(conjugate_by_z_rotation(PauliString::from_str("Z"), 2), StructuralError);
}

TEST(Conjugation, XXRotationRules) {
    EXPECT_EQ(conjugate_by_xx_rotation(PauliString::from_str("YI"), 1, 2), PauliString::from_str("-ZX"));
    EXPECT_EQ(conjugate_by_xx_rotation(PauliString::from_str("XI"), 1, 2), PauliString::from_str("XI"));
    EXPECT_EQ(conjugate_by_xx_rotation(PauliString::from_str("ZI"), 1, 2), PauliString::from_str("YX"));
    EXPECT_THROW(conjugate_by_xx_rotation(PauliString::from_str("ZI"), 1, 1), StructuralError);
}

TEST(Conjugation, BlockUnitaryGrowsTheString) {
    const ChainConfig cfg(10, Boundary::open, 5);
    EXPECT_EQ(conjugate_by_block_unitary(labelled(cfg, {{Block::A, 1, 'Y'}}), Block::A, cfg),
              labelled(cfg, {{Block::A, 2, 'Y'}, {Block::A, 1, 'Z'}}));
    for (std::size_t n = 2; n < cfg.block_a(); ++n) {
        auto in = labelled(cfg, {{Block::A, n, 'Y'}});
        auto out = labelled(cfg, {{Block::A, n + 1, 'Y'}});
        for (std::size_t j = 1; j < n; ++j) in.set_letter(cfg.site_a(j), 'Z');
        for (std::size_t j = 1; j <= n; ++j) out.set_letter(cfg.site_a(j), 'Z');
        EXPECT_EQ(conjugate_by_block_unitary(in, Block::A, cfg), out) << n;
    }
    const PauliString id(cfg.length());
    EXPECT_EQ(conjugate_by_block_unitary(id, Block::B, cfg), id);
}

TEST(InteractionOperators, LowOrders) {
    const ChainConfig cfg(8, Boundary::open, 4);
    const auto ops = interaction_operators(9, cfg);
    ASSERT_EQ(ops.size(), 9u);
    EXPECT_EQ(block_label_string(ops[0].factors.at(0).generator(), cfg), "+ A1Y B1Y");
    EXPECT_EQ(block_label_string(ops[1].factors.at(0).generator(), cfg), "+ A2Y A1Z B1Z B2Y");
    EXPECT_EQ(block_label_string(ops[7].factors.at(0).generator(), cfg), "+ A1X B1X");
    EXPECT_EQ(ops[8].factors.at(0).generator(), ops[0].factors.at(0).generator());
    EXPECT_EQ(interaction_operator_recursive(5, cfg), ops[4]);
}

TEST(InteractionOperators, ClosedChainHasTwoFactors) {
    const ChainConfig cfg(8, Boundary::closed, 4);
    for (const auto &v : interaction_operators(8, cfg)) {
        ASSERT_EQ(v.factors.size(), 2u);
        EXPECT_TRUE(commutes(v.factors[0].generator(), v.factors[1].generator()));
    }
    EXPECT_FALSE(interaction_operator_closed_form(1, cfg).has_value());
}

TEST(InteractionOperators, ClosedFormEqualBlocks) {
    for (std::size_t len : {4, 6, 8, 12, 20}) {
        const auto cfg = ChainConfig::equal_blocks(len, Boundary::open);
        const auto ops = interaction_operators(2 * len + 1, cfg);
        for (const auto &v : ops) {
            const auto closed = interaction_operator_closed_form(v.n, cfg);
            ASSERT_TRUE(closed.has_value()) << len << " " << v.n;
            ASSERT_EQ(*closed, v) << "L=" << len << " n=" << v.n;
        }
    }
}

TEST(InteractionOperators, ClosedFormUnequalBlocks) {
    for (std::size_t len : {6, 8, 10, 12}) {
        for (std::size_t m = 1; 2 * m < len; ++m) {
            const ChainConfig cfg(len, Boundary::open, m);
            for (const auto &v : interaction_operators(2 * len, cfg)) {
                const auto closed = interaction_operator_closed_form(v.n, cfg);
                if (v.n <= m + 1) {
                    ASSERT_TRUE(closed.has_value());
                }
                if (closed) {
                    ASSERT_EQ(*closed, v) << "L=" << len << " M=" << m << " n=" << v.n;
                }
            }
        }
    }
    const ChainConfig cfg(6, Boundary::open, 2);
    EXPECT_EQ(block_label_string(interaction_operator_closed_form(3, cfg)->factors[0].generator(), cfg),
              "+ A2X A1Z B1Z B2Z B3Y");
    EXPECT_FALSE(interaction_operator_closed_form(20, cfg).has_value());
}

TEST(InteractionOperators, PrintedDecimationIsOffByOne) {
    const auto cfg = ChainConfig::equal_blocks(8, Boundary::open);
    for (std::size_t k = 1; k < 4; ++k) {
        const auto printed = printed_decimation_string(k, cfg);
        ASSERT_TRUE(printed.has_value());
        EXPECT_NE(*printed, interaction_operator_recursive(4 + k, cfg).factors[0].generator()) << k;
    }
    EXPECT_FALSE(printed_decimation_string(4, cfg).has_value());
}

TEST(InteractionOperators, PairwiseCommutingForEqualBlocks) {
    const auto cfg = ChainConfig::equal_blocks(8, Boundary::open);
    const auto ops = interaction_operators(16, cfg);
    for (const auto &a : ops)
        for (const auto &b : ops) ASSERT_TRUE(commutes(a.factors[0].generator(), b.factors[0].generator()));
    const auto v1 = to_matrix(ops[0].factors[0].generator());
    const auto v2 = to_matrix(ops[1].factors[0].generator());
    EXPECT_LT((v1 * v2 - v2 * v1).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(InteractionOperators, UnequalBlocksStopCommutingAfterTwoMKicks) {
    for (std::size_t m = 1; m <= 3; ++m) {
        const ChainConfig cfg(8, Boundary::open, m);
        const auto ops = interaction_operators(2 * m + 1, cfg);
        for (std::size_t k = 1; k < 2 * m; ++k) {
            EXPECT_TRUE(commutes(ops[0].factors[0].generator(), ops[k].factors[0].generator())) << m << " " << k;
        }
        EXPECT_FALSE(commutes(ops[0].factors[0].generator(), ops[2 * m].factors[0].generator())) << m;
    }
}

TEST(Factorization, Residuals) {
    EXPECT_LT(verify_factorization(1, ChainConfig(4, Boundary::open, 2)), 1e-12);
    EXPECT_LT(verify_factorization(5, ChainConfig(8, Boundary::open, 4)), 1e-10);
    EXPECT_LT(verify_factorization(4, ChainConfig(6, Boundary::open, 2)), 1e-10);
    EXPECT_LT(verify_factorization(7, ChainConfig(6, Boundary::closed, 3)), 1e-10);
    EXPECT_THROW(verify_factorization(1, ChainConfig::equal_blocks(14, Boundary::open)), ResourceError);
}
