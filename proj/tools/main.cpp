// Copyright 2026 The akmeter Authors
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

// akmeter: simultaneous position/momentum measurement explorer.
//
//   akmeter derive
//   akmeter report <config> [--backend gaussian|grid|both] [--out DIR]
//   akmeter superposition <config> [--out DIR]
//   akmeter sweep <config> --lambdas 0.5,1,2 [--backend ...] [--out DIR]
//   akmeter sample <config> --count N [--seed S] [--out DIR]
//   akmeter check

#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "akmeter/commands.hpp"

namespace {

std::optional<akmeter::BackendChoice> backend_from(const std::string &name) {
    if (name.empty()) {
        return std::nullopt;
    }
    static const std::map<std::string, akmeter::BackendChoice> names = {
        {"gaussian", akmeter::BackendChoice::gaussian},
        {"grid", akmeter::BackendChoice::grid},
        {"both", akmeter::BackendChoice::both}};
    return names.at(name);
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Simultaneous position and momentum measurement: symbolic, Gaussian and lattice backends"};
    app.require_subcommand(1);

    std::string config;
    std::string backend;
    std::string out_dir = ".";
    std::optional<uint64_t> seed;
    std::vector<double> lambdas;
    std::size_t count = 1000;
    std::string fault;
    std::size_t check_n = 32;

    auto add_common = [&](CLI::App *sub) {
        sub->add_option("config", config, "Scenario file")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", out_dir, "Output directory");
        sub->add_option("--seed", seed, "Override the scenario seed");
    };
    auto add_backend = [&](CLI::App *sub) {
        sub->add_option("--backend", backend, "gaussian, grid or both")
            ->check(CLI::IsMember({"gaussian", "grid", "both"}));
    };

    auto *derive = app.add_subcommand("derive", "Print Heisenberg finals, error operators and commutators");
    auto *report = app.add_subcommand("report", "Evaluate every inequality for a scenario");
    add_common(report);
    add_backend(report);
    auto *superposition = app.add_subcommand("superposition", "Pointer region masses for a packet superposition");
    add_common(superposition);
    auto *sweep = app.add_subcommand("sweep", "Tabulate errors over meter widths");
    add_common(sweep);
    add_backend(sweep);
    sweep->add_option("--lambdas", lambdas, "Comma-separated meter widths")->required()->delimiter(',');
    auto *sample = app.add_subcommand("sample", "Draw pointer readings from the outcome distribution");
    add_common(sample);
    sample->add_option("--count", count, "Number of draws")->check(CLI::PositiveNumber);
    auto *check = app.add_subcommand("check", "Run the fast invariant suite");
    check->add_option("--grid-n", check_n, "Lattice points per axis for backend agreement");
    check->add_option("--fault", fault, "Force one invariant to fail (test hook)")->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : akmeter::kExitInputError;
    }

    akmeter::CommandOptions options;
    options.out_dir = out_dir;
    options.backend = backend_from(backend);
    options.seed = seed;

    if (derive->parsed()) {
        return akmeter::cmd_derive(std::cout);
    }
    if (report->parsed()) {
        return akmeter::cmd_report(config, options, std::cout, std::cerr);
    }
    if (superposition->parsed()) {
        return akmeter::cmd_superposition(config, options, std::cout, std::cerr);
    }
    if (sweep->parsed()) {
        return akmeter::cmd_sweep(config, lambdas, options, std::cout, std::cerr);
    }
    if (sample->parsed()) {
        return akmeter::cmd_sample(config, count, options, std::cout, std::cerr);
    }
    akmeter::CheckOptions check_options;
    check_options.fault = fault;
    check_options.grid_n = check_n;
    return akmeter::cmd_check(check_options, std::cout, std::cerr);
}
