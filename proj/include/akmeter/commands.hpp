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

// Subcommand implementations shared by the akmeter tool, the tests and the
// Python module. Each cmd_* function returns the process exit code:
// 0 success, 1 input error, 2 an inequality (or invariant) failed.

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "akmeter/report.hpp"
#include "akmeter/scenario.hpp"

namespace akmeter {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitViolation = 2;

struct CommutatorEntry {
    ErrorKind a;
    ErrorKind b;
    CanonicalPolynomial value;
};

/// All 15 unordered pairs a < b in ErrorKind order.
std::vector<CommutatorEntry> commutator_table(const ErrorDisturbanceOperators &ops);

/// Finals, error/disturbance operators and commutator table; byte-stable.
std::string derive_text(const Rational &coupling = Rational(1));

GaussianState scenario_gaussian_state(const Scenario &scenario);
GridAxes scenario_axes(const Scenario &scenario);
GridState scenario_grid_state(const Scenario &scenario, std::vector<std::string> *warnings = nullptr);
MeasurementReport run_backend(const Scenario &scenario, Backend backend);
std::vector<Backend> backends_of(BackendChoice choice);

struct PacketRegion {
    std::size_t packet = 0;  // 1-based
    double weight = 0;       // |c_n|^2 / sum |c_m|^2
    Rectangle region{};
    double mass = 0;
};

struct SuperpositionResult {
    std::vector<PacketRegion> rows;
    OutcomeDistribution distribution;
    std::vector<std::string> warnings;
};

/// One rectangle per packet, centred on the packet's expected pointer reading.
/// On each outcome axis the half-width is region_fraction times the smallest
/// non-zero centre separation along that axis (the whole axis if there is none),
/// clipped to the lattice.
SuperpositionResult run_superposition(const Scenario &scenario);

/// A random system state (correlated, possibly mixed) and meter width.
struct RandomGaussianScenario {
    GaussianState state;
    double lambda;
};

RandomGaussianScenario random_gaussian_scenario(std::mt19937_64 &rng, double hbar = 1.0);

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct CheckOptions {
    /// Test hook: "commutator_table", "polarization" or "backend_agreement" forces that invariant to fail.
    std::string fault;
    std::size_t grid_n = 32;
    uint64_t seed = 20260101;
};

std::vector<CheckResult> run_checks(const CheckOptions &options = {});

struct CommandOptions {
    std::filesystem::path out_dir = ".";
    std::optional<BackendChoice> backend;
    std::optional<uint64_t> seed;
};

int cmd_derive(std::ostream &out);
int cmd_report(const std::filesystem::path &config, const CommandOptions &options, std::ostream &out,
               std::ostream &err);
int cmd_superposition(const std::filesystem::path &config, const CommandOptions &options, std::ostream &out,
                      std::ostream &err);
int cmd_sweep(const std::filesystem::path &config, const std::vector<double> &lambdas, const CommandOptions &options,
              std::ostream &out, std::ostream &err);
int cmd_sample(const std::filesystem::path &config, std::size_t count, const CommandOptions &options,
               std::ostream &out, std::ostream &err);
int cmd_check(const CheckOptions &options, std::ostream &out, std::ostream &err);

}  // namespace akmeter
