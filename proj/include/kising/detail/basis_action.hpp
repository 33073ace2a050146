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

#include <Eigen/Dense>

#include "kising/errors.hpp"
#include "kising/pauli.hpp"

namespace kising::detail {

/// A Pauli string acting on computational basis indices of an L-site register.
///
/// Site s maps to bit (L - s) of the index, so site 1 is the most significant
/// bit. P|b> = i^phase (-1)^popcount(b & z_mask) |b ^ x_mask>.
struct BasisAction {
    std::uint64_t x_mask = 0;
    std::uint64_t z_mask = 0;
    int phase = 0;

    explicit BasisAction(const PauliString &p) {
        const std::size_t n = p.size();
        require(n <= 63, "basis action needs fewer than 64 sites");
        int num_y = 0;
        for (std::size_t s = 1; s <= n; ++s) {
            const std::uint64_t bit = std::uint64_t{1} << (n - s);
            if (p.x(s)) x_mask |= bit;
            if (p.z(s)) z_mask |= bit;
            num_y += p.x(s) && p.z(s);
        }
        phase = (p.phase() + num_y) % 4;
    }

    /// Coefficient c with P|b> = c |b ^ x_mask>.
    std::complex<double> coefficient(std::uint64_t b) const {
        const int k = (phase + 2 * (std::popcount(b & z_mask) & 1)) % 4;
        static const std::complex<double> kPowers[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        return kPowers[k];
    }
};

/// Applies exp(-i pi/4 G) = (1 - iG)/sqrt(2) to every column of `amps`, viewed as
/// rows indexed by basis states. Works for a single state (one column) too.
template <typename Derived>
void apply_rotation_rows(Eigen::MatrixBase<Derived> &amps, const PauliRotation &rot) {
    const BasisAction act(rot.generator());
    const std::complex<double> minus_i{0, -1};
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const std::uint64_t dim = static_cast<std::uint64_t>(amps.rows());
    if (act.x_mask == 0) {
        for (std::uint64_t b = 0; b < dim; ++b) {
            amps.row(b) *= (1.0 + minus_i * act.coefficient(b)) * inv_sqrt2;
        }
        return;
    }
    const std::uint64_t top = std::uint64_t{1} << (63 - std::countl_zero(act.x_mask));
    for (std::uint64_t b = 0; b < dim; ++b) {
        if (b & top) {
            continue;
        }
        const std::uint64_t c = b ^ act.x_mask;
        // G|b> = cb |c>,  G|c> = cc |b>
        const std::complex<double> cb = act.coefficient(b), cc = act.coefficient(c);
        auto rb = amps.row(b).eval();
        auto rc = amps.row(c).eval();
        amps.row(b) = (rb + minus_i * cc * rc) * inv_sqrt2;
        amps.row(c) = (rc + minus_i * cb * rb) * inv_sqrt2;
    }
}

}  // namespace kising::detail
