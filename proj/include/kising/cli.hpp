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

// Command implementations behind the `kising` driver. Each command renders
// its whole output into a string so callers decide where it goes.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "kising/analytics.hpp"
#include "kising/dense.hpp"
#include "kising/interaction_picture.hpp"
#include "kising/stabilizer.hpp"

namespace kising::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2, kResource = 3 };

struct ExperimentConfig {
    std::size_t length = 20;
    Boundary boundary = Boundary::open;
    /// Block A size; defaults to L/2.
    std::optional<std::size_t> block;
    /// Last kick count; defaults depend on the command.
    std::optional<std::uint64_t> kicks;
    /// dense | stabilizer | both | auto (both when L <= 24, else stabilizer).
    std::string backend = "auto";
    std::string format = "csv";
    std::string out;
    std::uint64_t seed = 1;
    /// Concurrence prediction rule: central | mirror.
    std::string rule = "central";
    /// Pair filter "i-j,i-j"; empty means all pairs.
    std::string pairs;

    std::size_t block_size() const { return block.value_or(length / 2); }
};

inline Boundary parse_boundary(const std::string &s) {
    if (s == "open") return Boundary::open;
    if (s == "closed" || s == "periodic") return Boundary::closed;
    throw StructuralError("boundary must be open or closed, got '" + s + "'");
}

/// Overlays keys of a JSON object onto `cfg`. Keys mirror the long flag names.
inline void apply_json(ExperimentConfig &cfg, const nlohmann::json &j) {
    require(j.is_object(), "config file must hold a JSON object");
    for (const auto &[key, value] : j.items()) {
        try {
            if (key == "length") {
                cfg.length = value.get<std::size_t>();
            } else if (key == "boundary") {
                cfg.boundary = parse_boundary(value.get<std::string>());
            } else if (key == "block") {
                cfg.block = value.get<std::size_t>();
            } else if (key == "kicks" || key == "n_max") {
                cfg.kicks = value.get<std::uint64_t>();
            } else if (key == "backend") {
                cfg.backend = value.get<std::string>();
            } else if (key == "format") {
                cfg.format = value.get<std::string>();
            } else if (key == "out") {
                cfg.out = value.get<std::string>();
            } else if (key == "seed") {
                cfg.seed = value.get<std::uint64_t>();
            } else if (key == "rule") {
                cfg.rule = value.get<std::string>();
            } else if (key == "pairs") {
                cfg.pairs = value.get<std::string>();
            } else {
                throw StructuralError("unknown config key '" + key + "'");
            }
        } catch (const nlohmann::json::exception &e) {
            throw StructuralError("config key '" + key + "': " + e.what());
        }
    }
}

inline ExperimentConfig load_config_file(const std::string &path, ExperimentConfig base = {}) {
    std::ifstream in(path);
    require(static_cast<bool>(in), "cannot read config file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception &e) {
        throw StructuralError("config file '" + path + "': " + e.what());
    }
    apply_json(base, j);
    return base;
}

/// Resolves "auto" and checks the combination; throws StructuralError for
/// bad input and ResourceError when the dense backend would exceed its cap.
inline void validate(ExperimentConfig &cfg) {
    require(cfg.length >= 4 && cfg.length % 2 == 0, "--length must be even and at least 4");
    require(cfg.block_size() >= 1 && cfg.block_size() < cfg.length, "--block must lie in 1..L-1");
    require(cfg.format == "csv" || cfg.format == "json", "--format must be csv or json");
    require(cfg.rule == "central" || cfg.rule == "mirror", "--rule must be central or mirror");
    if (cfg.backend == "auto") cfg.backend = cfg.length <= kMaxDenseSites ? "both" : "stabilizer";
    require(cfg.backend == "dense" || cfg.backend == "stabilizer" || cfg.backend == "both",
            "--backend must be dense, stabilizer, both or auto");
    if (cfg.backend != "stabilizer" && cfg.length > kMaxDenseSites) {
        throw ResourceError("dense backend refused for L = " + std::to_string(cfg.length) + " (limit " +
                            std::to_string(kMaxDenseSites) + "); use --backend stabilizer");
    }
}

/// The chain used for dynamics and oracles. Blocks larger than L/2 are
/// mirrored, since the entropy of A equals that of its complement.
inline ChainConfig chain_of(const ExperimentConfig &cfg) {
    const std::size_t m = cfg.block_size();
    return ChainConfig(cfg.length, cfg.boundary, std::min(m, cfg.length - m));
}

inline std::string fmt(double v) {
    if (v == 0.0) return "0";  // folds -0
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

/// JSON number with the same 12-digit rounding as the CSV output.
inline nlohmann::json num(double v) { return std::stod(fmt(v)); }

struct CommandResult {
    std::string output;
    int exit_code = kOk;
    /// Human-readable diagnostics for stderr.
    std::vector<std::string> messages;
};

inline std::vector<std::pair<std::size_t, std::size_t>> parse_pairs(const std::string &text, std::size_t length) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        const auto dash = item.find('-');
        require(dash != std::string::npos, "pair '" + item + "' must look like i-j");
        std::size_t i = 0, j = 0;
        try {
            i = std::stoul(item.substr(0, dash));
            j = std::stoul(item.substr(dash + 1));
        } catch (const std::exception &) {
            throw StructuralError("pair '" + item + "' must look like i-j");
        }
        require(i != j && i >= 1 && j >= 1 && i <= length && j <= length, "pair '" + item + "' is out of range");
        out.emplace_back(std::min(i, j), std::max(i, j));
    }
    return out;
}

inline CommandResult cmd_entropy_profile(ExperimentConfig cfg) {
    validate(cfg);
    const ChainConfig chain = chain_of(cfg);
    const std::size_t m = cfg.block_size();
    const std::uint64_t n_max = cfg.kicks.value_or(chain.period());
    const bool use_dense = cfg.backend != "stabilizer";
    const bool use_tableau = cfg.backend != "dense";

    CommandResult result;
    std::optional<StateVector> dense;
    std::optional<StabilizerTableau> tab;
    if (use_dense) dense = StateVector::zero(cfg.length);
    if (use_tableau) tab = StabilizerTableau::zero_state(cfg.length);

    std::ostringstream csv;
    csv << "n,entropy_ebits,oracle_ebits,delta\n";
    nlohmann::json rows = nlohmann::json::array();
    for (std::uint64_t n = 0;; ++n) {
        std::optional<double> s_dense, s_tab;
        if (dense) s_dense = block_entropy(*dense, m);
        if (tab) s_tab = static_cast<double>(tab->prefix_entropy(m));
        if (s_dense && s_tab && std::abs(*s_dense - *s_tab) > 1e-6) {
            result.exit_code = kCheckFailed;
            result.messages.push_back("n=" + std::to_string(n) + ": dense " + fmt(*s_dense) + " vs stabilizer " +
                                      fmt(*s_tab));
        }
        // The tableau value is exact; prefer it when both ran.
        const double s = s_tab ? *s_tab : *s_dense;
        const auto oracle = entropy_closed_form(chain, n);
        std::optional<double> delta;
        if (oracle) delta = s - *oracle;
        if (delta && std::abs(*delta) > 1e-6) {
            result.exit_code = kCheckFailed;
            result.messages.push_back("n=" + std::to_string(n) + ": entropy " + fmt(s) + " differs from oracle " +
                                      std::to_string(*oracle));
        }
        csv << n << ',' << fmt(s) << ',' << (oracle ? std::to_string(*oracle) : "") << ','
            << (delta ? fmt(*delta) : "") << '\n';
        rows.push_back({{"n", n},
                        {"entropy_ebits", num(s)},
                        {"oracle_ebits", oracle ? nlohmann::json(*oracle) : nlohmann::json(nullptr)},
                        {"delta", delta ? num(*delta) : nlohmann::json(nullptr)}});
        if (n == n_max) break;
        if (dense) apply_floquet(*dense, chain);
        if (tab) tab->apply_kick(chain);
    }
    if (chain.boundary() == Boundary::closed && chain.block_a() % 2 != 0) {
        result.messages.push_back("closed chain with odd block: no closed-form oracle, oracle column left empty");
    }
    if (cfg.format == "csv") {
        result.output = csv.str();
    } else {
        nlohmann::json doc = {{"length", cfg.length},
                              {"boundary", to_string(cfg.boundary)},
                              {"block", m},
                              {"backend", cfg.backend},
                              {"rows", rows}};
        result.output = doc.dump(2) + "\n";
    }
    return result;
}

inline CommandResult cmd_concurrence_scan(ExperimentConfig cfg) {
    if (cfg.backend == "auto") cfg.backend = cfg.length <= kMaxDenseSites ? "dense" : "stabilizer";
    validate(cfg);
    const ChainConfig chain = chain_of(cfg);
    const std::uint64_t n_max = cfg.kicks.value_or(2 * chain.length());
    auto pairs = parse_pairs(cfg.pairs, cfg.length);
    if (pairs.empty()) pairs = all_pairs(cfg.length);
    const auto rule = cfg.rule == "mirror" ? ConcurrenceRule::mirror_pairs : ConcurrenceRule::central_pair;
    const bool use_dense = cfg.backend != "stabilizer";
    const bool use_tableau = cfg.backend != "dense";

    CommandResult result;
    std::optional<StateVector> dense;
    std::optional<StabilizerTableau> tab;
    if (use_dense) dense = StateVector::zero(cfg.length);
    if (use_tableau) tab = StabilizerTableau::zero_state(cfg.length);

    std::ostringstream csv;
    csv << "site_i,site_j,n,concurrence,predicted\n";
    nlohmann::json rows = nlohmann::json::array();
    for (std::uint64_t n = 0;; ++n) {
        if (tab) tab->canonicalize();
        for (auto [i, j] : pairs) {
            std::optional<double> c_dense, c_tab;
            if (dense) c_dense = concurrence(reduced_density_matrix(*dense, {i, j}));
            if (tab) c_tab = concurrence(tableau_two_qubit_rdm(*tab, i, j));
            if (c_dense && c_tab && std::abs(*c_dense - *c_tab) > 1e-6) {
                result.exit_code = kCheckFailed;
                result.messages.push_back("backends disagree at (" + std::to_string(i) + "," + std::to_string(j) +
                                          ") n=" + std::to_string(n));
            }
            // Roundoff from the dense eigen-solves sits near 1e-16; write it as 0.
            double c = c_dense ? *c_dense : *c_tab;
            if (std::abs(c) < 1e-12) c = 0.0;
            const double predicted = concurrence_prediction(chain, i, j, n, rule);
            if (std::abs(c - predicted) > 1e-6) {
                result.exit_code = kCheckFailed;
                result.messages.push_back("(" + std::to_string(i) + "," + std::to_string(j) + ") n=" +
                                          std::to_string(n) + ": concurrence " + fmt(c) + ", predicted " +
                                          fmt(predicted));
            }
            csv << i << ',' << j << ',' << n << ',' << fmt(c) << ',' << fmt(predicted) << '\n';
            rows.push_back(
                {{"site_i", i}, {"site_j", j}, {"n", n}, {"concurrence", num(c)}, {"predicted", num(predicted)}});
        }
        if (n == n_max) break;
        if (dense) apply_floquet(*dense, chain);
        if (tab) tab->apply_kick(chain);
    }
    if (cfg.format == "csv") {
        result.output = csv.str();
    } else {
        nlohmann::json doc = {{"length", cfg.length},
                              {"boundary", to_string(cfg.boundary)},
                              {"backend", cfg.backend},
                              {"rule", cfg.rule},
                              {"rows", rows}};
        result.output = doc.dump(2) + "\n";
    }
    return result;
}

namespace detail {

inline std::string render_operator(const InteractionOperator &v, const ChainConfig &cfg) {
    std::string out;
    for (const auto &f : v.factors) {
        if (!out.empty()) out += " ; ";
        out += block_label_string(f.generator(), cfg);
    }
    return out;
}

}  // namespace detail

inline CommandResult cmd_vn_table(ExperimentConfig cfg) {
    if (cfg.backend == "auto") cfg.backend = "stabilizer";  // symbolic, no backend needed
    validate(cfg);
    require(cfg.block_size() <= cfg.length / 2, "vn-table needs --block <= L/2");
    const ChainConfig chain = chain_of(cfg);
    const std::uint64_t n_max = cfg.kicks.value_or(chain.length() + 1);
    CommandResult result;
    std::ostringstream csv;
    csv << "n,recursive,closed_form,match\n";
    nlohmann::json rows = nlohmann::json::array();
    if (n_max >= 1) {
        for (const auto &v : interaction_operators(n_max, chain)) {
            const auto closed = interaction_operator_closed_form(v.n, chain);
            const std::string rec = detail::render_operator(v, chain);
            const std::string cf = closed ? detail::render_operator(*closed, chain) : "n/a";
            std::optional<bool> match;
            if (closed) match = *closed == v;
            if (match == false) {
                result.exit_code = kCheckFailed;
                result.messages.push_back("V_" + std::to_string(v.n) + ": closed form " + cf + " vs recursion " + rec);
            }
            csv << v.n << ',' << rec << ',' << cf << ',' << (match ? (*match ? "true" : "false") : "n/a") << '\n';
            nlohmann::json factors = nlohmann::json::array();
            for (const auto &f : v.factors) {
                factors.push_back({{"sign", f.generator().sign()}, {"string", f.generator().str()}});
            }
            rows.push_back({{"n", v.n},
                            {"factors", factors},
                            {"recursive", rec},
                            {"closed_form", closed ? nlohmann::json(cf) : nlohmann::json(nullptr)},
                            {"match", match ? nlohmann::json(*match) : nlohmann::json(nullptr)}});
        }
    }
    if (cfg.format == "csv") {
        result.output = csv.str();
    } else {
        nlohmann::json doc = {{"length", cfg.length},
                              {"boundary", to_string(cfg.boundary)},
                              {"block", chain.block_a()},
                              {"rows", rows}};
        result.output = doc.dump(2) + "\n";
    }
    return result;
}

struct CheckRecord {
    std::string name;
    /// "pass", "fail" or "skipped".
    std::string status;
    double value = 0.0;
    std::string threshold;
    std::string detail;
};

inline nlohmann::json erratum_json(const ErratumReport &r) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto &row : r.rows) {
        rows.push_back({{"n", row.n},
                        {"simulated", row.simulated},
                        {"sawtooth", row.sawtooth},
                        {"verbatim", row.verbatim},
                        {"verbatim_theta0_zero", row.verbatim_theta_zero_0}});
    }
    return {{"length", r.cfg.length()},
            {"boundary", to_string(r.cfg.boundary())},
            {"block", r.cfg.block_a()},
            {"sawtooth_matches_simulation", r.sawtooth_matches},
            {"divergent_n", r.divergent},
            {"rows", rows}};
}

inline CommandResult cmd_verify(ExperimentConfig cfg) {
    if (cfg.backend == "auto") cfg.backend = cfg.length <= kMaxDenseSites ? "both" : "stabilizer";
    validate(cfg);
    const ChainConfig chain = chain_of(cfg);
    const std::uint64_t n_max = cfg.kicks.value_or(2 * chain.length());
    std::vector<CheckRecord> checks;
    auto record = [&](std::string name, bool ok, double value, std::string threshold, std::string detail = "") {
        checks.push_back({std::move(name), ok ? "pass" : "fail", value, std::move(threshold), std::move(detail)});
    };
    auto skip = [&](std::string name, std::string why) { checks.push_back({std::move(name), "skipped", 0, "", why}); };

    // U^n against U_A^n U_B^n V_n ... V_1 as dense operators.
    if (chain.length() <= kMaxOperatorSites) {
        double worst = 0;
        for (std::uint64_t n = 1; n <= n_max; ++n) worst = std::max(worst, verify_factorization(n, chain));
        record("factorization", worst < 1e-10, worst, "< 1e-10", "n = 1.." + std::to_string(n_max));
    } else {
        skip("factorization", "dense operators limited to " + std::to_string(kMaxOperatorSites) + " sites");
    }

    if (cfg.backend == "stabilizer") {
        skip("equivalence", "needs the dense backend");
    } else if (chain.length() > kMaxOperatorSites) {
        skip("equivalence", "interaction-picture replay limited to " + std::to_string(kMaxOperatorSites) + " sites");
    } else {
        double worst = 0, worst_ladder = 0;
        std::vector<std::uint64_t> ladder_n;
        for (std::uint64_t n = 0; n <= n_max; ++n) {
            const auto r = interaction_picture_equivalence(n, chain);
            worst = std::max(worst, r.evolution);
            if (r.ladder) {
                worst_ladder = std::max(worst_ladder, *r.ladder);
                ladder_n.push_back(n);
            }
        }
        record("equivalence", worst < 1e-10, worst, "< 1e-10", "n = 0.." + std::to_string(n_max));
        if (!ladder_n.empty()) {
            record("bell_ladder", worst_ladder < 1e-10, worst_ladder, "< 1e-10",
                   "n = 0.." + std::to_string(ladder_n.back()));
        }
    }

    {
        const auto terms = printed_kraus_terms();
        const auto check = pauli_channel_check(terms);
        const double to_identity = (check.reconstructed - Eigen::Matrix4cd::Identity() / 4.0).cwiseAbs().maxCoeff();
        record("channel", check.residual < 1e-12 && to_identity < 1e-12, check.residual, "< 1e-12",
               "L=4 open, pair (2,3), n=1; Kraus sum equals identity/4 to " + fmt(to_identity));
        auto dropped = terms;
        dropped.pop_back();
        for (auto &t : dropped) t.probability = 1.0 / 3.0;
        const double control = pauli_channel_check(dropped).residual;
        record("channel_negative_control", control > 0.05, control, "> 0.05", "last Kraus term removed");
    }

    // Step-function entropy expression against simulation.
    nlohmann::json erratum = nlohmann::json::array();
    for (auto b : {Boundary::open, Boundary::closed}) {
        const auto report = erratum_report(ChainConfig::equal_blocks(20, b));
        erratum.push_back(erratum_json(report));
        record(std::string("sawtooth_vs_simulation_") + to_string(b), report.sawtooth_matches, 0.0, "exact",
               "L=20, M=10, n = 0.." + std::to_string(report.cfg.period()));
        if (b == Boundary::open) {
            const auto &row15 = report.rows.at(15);
            record("erratum_divergence_open", !report.divergent.empty() && row15.verbatim != row15.simulated,
                   static_cast<double>(row15.verbatim - row15.simulated), "!= 0",
                   "n=15: step-function expression " + std::to_string(row15.verbatim) + ", simulated " +
                       std::to_string(row15.simulated));
        }
    }

    // Printed decimation strings against the recursion (informational).
    nlohmann::json decimation = nlohmann::json::array();
    {
        const ChainConfig eq = ChainConfig::equal_blocks(chain.length() <= 48 ? chain.length() : 8, Boundary::open);
        const std::size_t m = eq.block_a();
        const auto ops = interaction_operators(eq.length(), eq);
        for (std::size_t k = 1; k <= m; ++k) {
            const auto printed = printed_decimation_string(k, eq);
            const auto &actual = ops.at(m + k - 1).factors.at(0).generator();
            decimation.push_back({{"k", k},
                                  {"printed", printed ? nlohmann::json(block_label_string(*printed, eq))
                                                      : nlohmann::json("undefined site")},
                                  {"recursion", block_label_string(actual, eq)},
                                  {"equal", printed && *printed == actual}});
        }
    }

    // Randomized Pauli phase check against explicit matrices.
    {
        std::mt19937_64 rng(cfg.seed);
        double worst = 0;
        for (int t = 0; t < 200; ++t) {
            const std::size_t n = 1 + rng() % 6;
            PauliString p(n), q(n);
            for (std::size_t s = 1; s <= n; ++s) {
                p.set_letter(s, "IXYZ"[rng() % 4]);
                q.set_letter(s, "IXYZ"[rng() % 4]);
            }
            p.set_phase(static_cast<int>(rng() % 4));
            worst = std::max(worst, (to_matrix(p * q) - to_matrix(p) * to_matrix(q)).cwiseAbs().maxCoeff());
        }
        record("pauli_phase", worst < 1e-12, worst, "< 1e-12", "200 random products, seed " + std::to_string(cfg.seed));
    }

    CommandResult result;
    bool all = true;
    for (const auto &c : checks) {
        if (c.status == "fail") {
            all = false;
            result.messages.push_back("check failed: " + c.name + " (" + fmt(c.value) + ", want " + c.threshold + ")");
        }
    }
    result.exit_code = all ? kOk : kCheckFailed;
    if (cfg.format == "csv") {
        std::ostringstream out;
        out << "check,status,value,threshold,detail\n";
        for (const auto &c : checks) {
            out << c.name << ',' << c.status << ',' << fmt(c.value) << ',' << c.threshold << ",\"" << c.detail
                << "\"\n";
        }
        out << "\n# erratum: n,simulated,sawtooth,verbatim,verbatim_theta0_zero\n";
        for (const auto &rep : erratum) {
            out << "# " << rep["boundary"].get<std::string>() << " L=" << rep["length"] << " M=" << rep["block"]
                << '\n';
            for (const auto &row : rep["rows"]) {
                out << row["n"] << ',' << row["simulated"] << ',' << row["sawtooth"] << ',' << row["verbatim"] << ','
                    << row["verbatim_theta0_zero"] << '\n';
            }
        }
        result.output = out.str();
    } else {
        nlohmann::json jc = nlohmann::json::array();
        for (const auto &c : checks) {
            jc.push_back({{"name", c.name},
                          {"status", c.status},
                          {"value", num(c.value)},
                          {"threshold", c.threshold},
                          {"detail", c.detail}});
        }
        nlohmann::json doc = {{"length", cfg.length},
                              {"boundary", to_string(cfg.boundary)},
                              {"block", cfg.block_size()},
                              {"pass", all},
                              {"checks", jc},
                              {"erratum", erratum},
                              {"decimation", decimation}};
        result.output = doc.dump(2) + "\n";
    }
    return result;
}

}  // namespace kising::cli
