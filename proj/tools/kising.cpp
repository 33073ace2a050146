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


// kising: entanglement sweeps for the kicked Ising chain at the Clifford point.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "kising/cli.hpp"

namespace {

using kising::cli::ExperimentConfig;

struct Flags {
    std::size_t length = 0;
    std::string boundary;
    std::size_t block = 0;
    std::uint64_t kicks = 0;
    std::string backend;
    std::string format;
    std::string out;
    std::uint64_t seed = 0;
    std::string rule;
    std::string pairs;
    std::string config;
};

struct Options {
    CLI::Option *length, *boundary, *block, *kicks, *backend, *format, *out, *seed, *rule, *pairs, *config;
};

Options add_common(CLI::App *sub, Flags &f) {
    Options o{};
    o.length = sub->add_option("--length,-L", f.length, "Chain length L (even, >= 4) [20]");
    o.boundary = sub->add_option("--boundary", f.boundary, "open | closed [open]");
    o.block = sub->add_option("--block,-M", f.block, "Block A size M, 1 <= M < L [L/2]");
    o.kicks = sub->add_option("--kicks,-n", f.kicks, "Largest kick count n_max [command-specific]");
    o.backend = sub->add_option("--backend", f.backend,
                                "dense | stabilizer | both | auto [auto: both if L <= 24, else stabilizer]");
    o.format = sub->add_option("--format", f.format, "csv | json [csv]");
    o.out = sub->add_option("--out,-o", f.out, "Output file [stdout]");
    o.seed = sub->add_option("--seed", f.seed, "Seed for randomized checks [1]");
    o.config = sub->add_option("--config", f.config, "JSON config file; flags given on the command line win");
    return o;
}

/// Config file first, then any flag that was actually given.
ExperimentConfig resolve(const Options &o, const Flags &f) {
    ExperimentConfig cfg;
    if (o.config->count()) cfg = kising::cli::load_config_file(f.config, cfg);
    if (o.length->count()) cfg.length = f.length;
    if (o.boundary->count()) cfg.boundary = kising::cli::parse_boundary(f.boundary);
    if (o.block->count()) cfg.block = f.block;
    if (o.kicks->count()) cfg.kicks = f.kicks;
    if (o.backend->count()) cfg.backend = f.backend;
    if (o.format->count()) cfg.format = f.format;
    if (o.out->count()) cfg.out = f.out;
    if (o.seed->count()) cfg.seed = f.seed;
    if (o.rule && o.rule->count()) cfg.rule = f.rule;
    if (o.pairs && o.pairs->count()) cfg.pairs = f.pairs;
    return cfg;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Entanglement dynamics of the kicked Ising chain at tau = pi/4"};
    app.require_subcommand(1);

    Flags f;
    auto *entropy = app.add_subcommand("entropy-profile", "Block entropy for n = 0..n_max against the sawtooth oracle");
    auto *conc = app.add_subcommand("concurrence-scan", "Pair concurrences for n = 0..n_max");
    auto *vn = app.add_subcommand("vn-table", "Interaction-picture operators V_n: recursion vs closed form");
    auto *verify = app.add_subcommand("verify", "Factorization, equivalence, channel and erratum checks");

    Options oe = add_common(entropy, f);
    Options oc = add_common(conc, f);
    oc.rule = conc->add_option("--rule", f.rule, "Prediction rule: central | mirror [central]");
    oc.pairs = conc->add_option("--pairs", f.pairs, "Pairs to scan, e.g. 2-3,1-4 [all pairs]");
    Options ov = add_common(vn, f);
    Options oy = add_common(verify, f);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kising::cli::kUsage;
    }

    try {
        kising::cli::CommandResult result;
        std::string out_path;
        if (entropy->parsed()) {
            const auto cfg = resolve(oe, f);
            out_path = cfg.out;
            result = kising::cli::cmd_entropy_profile(cfg);
        } else if (conc->parsed()) {
            const auto cfg = resolve(oc, f);
            out_path = cfg.out;
            result = kising::cli::cmd_concurrence_scan(cfg);
        } else if (vn->parsed()) {
            const auto cfg = resolve(ov, f);
            out_path = cfg.out;
            result = kising::cli::cmd_vn_table(cfg);
        } else {
            const auto cfg = resolve(oy, f);
            out_path = cfg.out;
            result = kising::cli::cmd_verify(cfg);
        }
        if (out_path.empty()) {
            std::cout << result.output;
        } else {
            std::ofstream file(out_path, std::ios::binary);
            if (!file) {
                std::cerr << "kising: cannot write '" << out_path << "'\n";
                return kising::cli::kUsage;
            }
            file << result.output;
        }
        for (const auto &m : result.messages) std::cerr << "kising: " << m << '\n';
        return result.exit_code;
    } catch (const kising::ResourceError &e) {
        std::cerr << "kising: refused: " << e.what() << '\n';
        return kising::cli::kResource;
    } catch (const kising::StructuralError &e) {
        std::cerr << "kising: " << e.what() << '\n';
        return kising::cli::kUsage;
    }
}
