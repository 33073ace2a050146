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
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kising/chain.hpp"
#include "kising/dense.hpp"
#include "kising/errors.hpp"
#include "kising/stabilizer.hpp"

namespace kising {

/// Sawtooth entropy (ebits) of block A after n kicks from |0...0>.
///
/// Open chain: rises 1 ebit per kick to M, stays there until n = N, then
/// unwinds 1 ebit per kick; period L. Closed chain: the same shape with two
/// interfaces, so 2 ebits per kick and period L/2. A closed chain with odd M
/// is not covered and yields nullopt.
inline std::optional<int> entropy_closed_form(const ChainConfig &cfg, std::uint64_t n) {
    const auto length = static_cast<std::int64_t>(cfg.length());
    const auto m = static_cast<std::int64_t>(cfg.block_a());
    const auto r = static_cast<std::int64_t>(n % cfg.period());
    if (cfg.boundary() == Boundary::open) return static_cast<int>(std::min({r, m, length - r}));
    if (m % 2 != 0) return std::nullopt;
    return static_cast<int>(std::min({2 * r, m, length - 2 * r}));
}

/// Heaviside step with a selectable value at zero.
inline int heaviside(std::int64_t x, int at_zero = 1) { return x > 0 ? 1 : (x < 0 ? 0 : at_zero); }

/// The two-piece step-function expression for equal blocks, evaluated exactly
/// as written (n reduced into one period first):
///   open:   n + (M - n) H(n - M) H(2M - n)
///   closed: 2n + (M - 2n) H(n - M/2) H(M - n)
/// It does not reproduce the falling branch of the sawtooth; see erratum_report().
inline int entropy_formula_verbatim(const ChainConfig &cfg, std::uint64_t n, int theta_zero = 1) {
    require(cfg.equal_blocks(), "the step-function expression is stated for equal blocks only");
    require(theta_zero == 0 || theta_zero == 1, "H(0) must be 0 or 1");
    const auto m = static_cast<std::int64_t>(cfg.block_a());
    const auto r = static_cast<std::int64_t>(n % cfg.period());
    if (cfg.boundary() == Boundary::open) {
        return static_cast<int>(r + (m - r) * heaviside(r - m, theta_zero) * heaviside(2 * m - r, theta_zero));
    }
    // H(n - M/2) is evaluated as H(2n - M) so odd M stays in integers.
    return static_cast<int>(2 * r +
                            (m - 2 * r) * heaviside(2 * r - m, theta_zero) * heaviside(m - r, theta_zero));
}

enum class ConcurrenceRule {
    /// Only the pair straddling the block interface, (L/2, L/2+1).
    central_pair,
    /// Every mirror pair (i, L+1-i); this is what the open chain actually does.
    mirror_pairs,
};

/// Predicted pair concurrence after n kicks: zero on closed chains; on open
/// chains 1 at odd multiples of L/2 for the pairs selected by `rule`, else 0.
inline double concurrence_prediction(const ChainConfig &cfg, std::size_t i, std::size_t j, std::uint64_t n,
                                     ConcurrenceRule rule = ConcurrenceRule::central_pair) {
    const std::size_t length = cfg.length();
    require(i != j && i >= 1 && j >= 1 && i <= length && j <= length, "two distinct sites required");
    if (cfg.boundary() == Boundary::closed) return 0.0;
    const std::uint64_t half = length / 2;
    const bool revival = n % half == 0 && (n / half) % 2 == 1;
    if (!revival) return 0.0;
    const auto [lo, hi] = std::minmax(i, j);
    const bool selected =
        rule == ConcurrenceRule::central_pair ? (lo == half && hi == half + 1) : (lo + hi == length + 1);
    return selected ? 1.0 : 0.0;
}

enum class Source { dense, stabilizer, closed_form };

inline std::string to_string(Source s) {
    switch (s) {
        case Source::dense:
            return "dense";
        case Source::stabilizer:
            return "stabilizer";
        case Source::closed_form:
            return "closed_form";
    }
    return "?";
}

struct ProfilePoint {
    std::uint64_t n;
    double entropy;
    Source source;
};

struct EntropyProfile {
    ChainConfig cfg;
    std::vector<ProfilePoint> points;
};

/// Entropy of sites 1..M for n = 0..n_max. The closed form skips points it
/// does not cover.
inline EntropyProfile entropy_profile(const ChainConfig &cfg, std::uint64_t n_max, Source source) {
    EntropyProfile profile{cfg, {}};
    const std::size_t m = cfg.block_a();
    switch (source) {
        case Source::dense: {
            StateVector state = StateVector::zero(cfg.length());
            for (std::uint64_t n = 0;; ++n) {
                profile.points.push_back({n, block_entropy(state, m), source});
                if (n == n_max) break;
                apply_floquet(state, cfg);
            }
            break;
        }
        case Source::stabilizer: {
            auto tab = StabilizerTableau::zero_state(cfg.length());
            for (std::uint64_t n = 0;; ++n) {
                profile.points.push_back({n, static_cast<double>(tab.prefix_entropy(m)), source});
                if (n == n_max) break;
                tab.apply_kick(cfg);
            }
            break;
        }
        case Source::closed_form:
            for (std::uint64_t n = 0; n <= n_max; ++n) {
                if (auto s = entropy_closed_form(cfg, n)) profile.points.push_back({n, double(*s), source});
            }
            break;
    }
    return profile;
}

struct ErratumRow {
    std::uint64_t n;
    int simulated;
    int sawtooth;
    int verbatim;
    int verbatim_theta_zero_0;
};

struct ErratumReport {
    ChainConfig cfg;
    std::vector<ErratumRow> rows;
    /// sawtooth == simulated at every n.
    bool sawtooth_matches = true;
    /// n values where the step-function expression disagrees with simulation (H(0) = 1).
    std::vector<std::uint64_t> divergent;
};

/// Compares simulation (stabilizer backend), the sawtooth oracle and the
/// step-function expression over one period for equal blocks.
inline ErratumReport erratum_report(const ChainConfig &cfg) {
    require(cfg.equal_blocks(), "erratum report needs equal blocks");
    ErratumReport report{cfg, {}, true, {}};
    auto tab = StabilizerTableau::zero_state(cfg.length());
    for (std::uint64_t n = 0; n <= cfg.period(); ++n) {
        if (n > 0) tab.apply_kick(cfg);
        ErratumRow row{n, static_cast<int>(tab.prefix_entropy(cfg.block_a())), entropy_closed_form(cfg, n).value_or(-1),
                       entropy_formula_verbatim(cfg, n, 1), entropy_formula_verbatim(cfg, n, 0)};
        if (row.sawtooth != row.simulated) report.sawtooth_matches = false;
        if (row.verbatim != row.simulated) report.divergent.push_back(n);
        report.rows.push_back(row);
    }
    return report;
}

}  // namespace kising
