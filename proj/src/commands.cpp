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

#include "akmeter/commands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "akmeter/csv.hpp"
#include "akmeter/errors.hpp"
#include "akmeter/expression.hpp"

namespace akmeter {

namespace {

constexpr std::array<std::pair<ErrorKind, ErrorKind>, 15> kTablePairs = {{
    {ErrorKind::eXi, ErrorKind::ePi},
    {ErrorKind::eXi, ErrorKind::dP},
    {ErrorKind::dX, ErrorKind::ePi},
    {ErrorKind::eXf, ErrorKind::ePf},
    {ErrorKind::eXf, ErrorKind::dP},
    {ErrorKind::dX, ErrorKind::ePf},
    {ErrorKind::eXi, ErrorKind::eXf},
    {ErrorKind::eXi, ErrorKind::ePf},
    {ErrorKind::eXi, ErrorKind::dX},
    {ErrorKind::ePi, ErrorKind::eXf},
    {ErrorKind::ePi, ErrorKind::ePf},
    {ErrorKind::ePi, ErrorKind::dP},
    {ErrorKind::eXf, ErrorKind::dX},
    {ErrorKind::ePf, ErrorKind::dP},
    {ErrorKind::dX, ErrorKind::dP},
}};

// Expected coefficient of i*hbar for each entry of kTablePairs.
constexpr std::array<int, 15> kExpectedTable = {-1, -1, -1, 1, -1, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0};

constexpr std::array<std::string_view, kGeneratorCount> kExpectedFinals = {
    "x + piP", "p - piX", "muX + x + (1/2) piP", "piX", "muP + p - (1/2) piX", "piP"};

constexpr std::array<std::string_view, 6> kExpectedErrors = {
    "muX + (1/2) piP", "muP - (1/2) piX", "muX - (1/2) piP", "muP + (1/2) piX", "piP", "-piX"};

std::filesystem::path prepare_out_dir(const CommandOptions &options) {
    std::filesystem::create_directories(options.out_dir);
    return options.out_dir;
}

Scenario load_with_overrides(const std::filesystem::path &config, const CommandOptions &options) {
    Scenario s = load_scenario(config);
    if (options.backend) {
        s.backend = *options.backend;
    }
    if (options.seed) {
        s.seed = *options.seed;
    }
    return s;
}

template <typename Body>
int guarded(std::ostream &err, Body &&body) {
    try {
        return body();
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    }
}

Vector6 packet_mean(const GaussianPacket &packet) {
    Vector6 m = Vector6::Zero();
    m(0) = packet.mean_x;
    m(1) = packet.mean_p;
    return m;
}

}  // namespace

std::vector<CommutatorEntry> commutator_table(const ErrorDisturbanceOperators &ops) {
    std::vector<CommutatorEntry> out;
    out.reserve(kTablePairs.size());
    for (const auto &[a, b] : kTablePairs) {
        out.push_back({a, b, commutator(ops[a], ops[b])});
    }
    return out;
}

std::string derive_text(const Rational &coupling) {
    const auto k = ak_generator(coupling);
    const auto finals = heisenberg_finals(k);
    const auto ops = error_disturbance_from_finals(finals);
    std::string out = fmt::format("# U = exp(K), K = {}\n", format_polynomial(k));
    out += "# Heisenberg finals\n";
    for (auto g : kAllGenerators) {
        out += fmt::format("{}f = {}\n", generator_name(g), format_polynomial(finals[g]));
    }
    out += "# error and disturbance operators\n";
    for (auto kind : kAllErrorKinds) {
        out += fmt::format("{} = {}\n", error_kind_name(kind), format_polynomial(ops[kind]));
    }
    out += "# commutators\n";
    for (const auto &entry : commutator_table(ops)) {
        out += fmt::format("[{}, {}] = {}\n", error_kind_name(entry.a), error_kind_name(entry.b),
                           format_polynomial(entry.value));
    }
    return out;
}

std::vector<Backend> backends_of(BackendChoice choice) {
    switch (choice) {
        case BackendChoice::gaussian:
            return {Backend::gaussian};
        case BackendChoice::grid:
            return {Backend::grid};
        case BackendChoice::both:
            return {Backend::gaussian, Backend::grid};
    }
    return {};
}

GaussianState scenario_gaussian_state(const Scenario &scenario) {
    if (scenario.system_kind != SystemKind::gaussian) {
        throw ConfigError("field 'backend': a superposition is not Gaussian; use backend = grid");
    }
    return compose_product(Eigen::Vector2d(scenario.mean_x, scenario.mean_p),
                           minimum_uncertainty_cov(scenario.system_width(), scenario.hbar),
                           ak_apparatus_state(scenario.lambda, scenario.hbar), scenario.hbar);
}

GridAxes scenario_axes(const Scenario &scenario) {
    const auto &cfg = scenario.grid;
    GridAxes axes = make_axes(cfg.n, cfg.length);
    const bool any_auto = std::any_of(cfg.auto_length.begin(), cfg.auto_length.end(), [](bool b) { return b; });
    if (any_auto) {
        const auto packets = scenario.system_packets();
        for (std::size_t axis = 0; axis < 3; ++axis) {
            if (cfg.auto_length[axis]) {
                axes[axis].length =
                    suggest_axes(cfg.n[axis], packets, scenario.lambda, scenario.hbar, scenario.coupling)[axis].length;
            }
        }
    }
    return axes;
}

GridState scenario_grid_state(const Scenario &scenario, std::vector<std::string> *warnings) {
    const auto packets = scenario.system_packets();
    return init_superposition(scenario_axes(scenario), packets, scenario.lambda, scenario.hbar, scenario.coupling,
                              warnings);
}

MeasurementReport run_backend(const Scenario &scenario, Backend backend) {
    if (backend == Backend::gaussian) {
        return gaussian_report(scenario_gaussian_state(scenario), scenario.coupling);
    }
    return grid_report(measure(scenario_grid_state(scenario), scenario.coupling), scenario.hbar);
}

SuperpositionResult run_superposition(const Scenario &scenario) {
    SuperpositionResult result;
    const auto packets = scenario.system_packets();
    const GridState state = scenario_grid_state(scenario, &result.warnings);
    result.distribution = outcome_distribution(state, scenario.coupling);
    const auto &dist = result.distribution;

    const Matrix6 transfer = ak_transfer_matrix(scenario.coupling, scenario.hbar);
    std::vector<std::array<double, 2>> centers;
    double total_weight = 0.0;
    for (const auto &packet : packets) {
        const Vector6 after = transfer * packet_mean(packet);
        centers.push_back({after(index_of(Generator::muX)), after(index_of(Generator::muP))});
        total_weight += std::norm(packet.coefficient);
    }

    std::array<double, 2> half_width{};
    const std::array<const AxisSpec *, 2> axes = {&dist.axis_x, &dist.axis_p};
    for (std::size_t a = 0; a < 2; ++a) {
        double smallest = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < centers.size(); ++i) {
            for (std::size_t j = i + 1; j < centers.size(); ++j) {
                const double gap = std::abs(centers[i][a] - centers[j][a]);
                if (gap > 1e-12 * axes[a]->length) {
                    smallest = std::min(smallest, gap);
                }
            }
        }
        half_width[a] = std::isfinite(smallest) ? scenario.region_fraction * smallest : axes[a]->length;
    }

    for (std::size_t n = 0; n < packets.size(); ++n) {
        auto clip = [](double v, const AxisSpec *axis) {
            return std::clamp(v, -0.5 * axis->length, 0.5 * axis->length);
        };
        Rectangle rect{clip(centers[n][0] - half_width[0], axes[0]), clip(centers[n][0] + half_width[0], axes[0]),
                       clip(centers[n][1] - half_width[1], axes[1]), clip(centers[n][1] + half_width[1], axes[1])};
        result.rows.push_back({n + 1, std::norm(packets[n].coefficient) / total_weight, rect, region_mass(dist, rect)});
    }
    return result;
}

RandomGaussianScenario random_gaussian_scenario(std::mt19937_64 &rng, double hbar) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double lambda = std::exp(std::log(0.2) + unit(rng) * std::log(25.0));
    const double squeeze = -1.5 + 3.0 * unit(rng);
    const double mixing = 1.0 + 2.0 * unit(rng);
    const double angle = std::numbers::pi * unit(rng);
    Eigen::Matrix2d diag = Eigen::Matrix2d::Zero();
    diag(0, 0) = mixing * hbar / 2.0 * std::exp(squeeze);
    diag(1, 1) = mixing * hbar / 2.0 * std::exp(-squeeze);
    Eigen::Matrix2d rot;
    rot << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
    const Eigen::Matrix2d cov = rot * diag * rot.transpose();
    const Eigen::Vector2d mean(-2.0 + 4.0 * unit(rng), -2.0 + 4.0 * unit(rng));
    return {compose_product(mean, cov, ak_apparatus_state(lambda, hbar), hbar), lambda};
}

std::vector<CheckResult> run_checks(const CheckOptions &options) {
    std::vector<CheckResult> results;

    {
        CheckResult r{"commutator_table", true, ""};
        const auto finals = heisenberg_finals(ak_generator());
        const auto ops = error_disturbance_from_finals(finals);
        for (auto g : kAllGenerators) {
            if (!(finals[g] == parse_polynomial(kExpectedFinals[index_of(g)]))) {
                r.passed = false;
                r.detail = fmt::format("{}f = {}", generator_name(g), format_polynomial(finals[g]));
            }
        }
        for (auto kind : kAllErrorKinds) {
            if (!(ops[kind] == parse_polynomial(kExpectedErrors[static_cast<std::size_t>(kind)]))) {
                r.passed = false;
                r.detail = fmt::format("{} = {}", error_kind_name(kind), format_polynomial(ops[kind]));
            }
        }
        auto table = commutator_table(ops);
        if (options.fault == "commutator_table") {
            table[0].value = CanonicalPolynomial() - table[0].value;
        }
        for (std::size_t i = 0; i < table.size(); ++i) {
            const auto expected = CanonicalPolynomial::constant(ExactScalar(0, kExpectedTable[i], 1));
            if (!(table[i].value == expected)) {
                r.passed = false;
                r.detail = fmt::format("[{}, {}] = {}", error_kind_name(table[i].a), error_kind_name(table[i].b),
                                       format_polynomial(table[i].value));
            }
        }
        if (r.passed) {
            r.detail = "finals, error operators and 15 commutators exact";
        }
        results.push_back(r);
    }

    {
        CheckResult r{"inequalities", true, ""};
        std::mt19937_64 rng(options.seed);
        double worst = std::numeric_limits<double>::infinity();
        double worst_residual = 0.0;
        for (int trial = 0; trial < 200; ++trial) {
            const auto scenario = random_gaussian_scenario(rng);
            const auto report = gaussian_report(scenario.state);
            for (const auto &rec : evaluate(report)) {
                worst = std::min(worst, rec.margin);
                if (!rec.satisfied) {
                    r.passed = false;
                    r.detail = fmt::format("{} margin {:.3e} in random scenario {}", rec.name, rec.margin, trial);
                }
            }
            worst_residual = std::max(worst_residual, variance_addition(report).max());
        }
        if (worst_residual > 1e-12) {
            r.passed = false;
            r.detail = fmt::format("variance addition residual {:.3e}", worst_residual);
        }
        if (r.passed) {
            r.detail = fmt::format("200 random states, smallest margin {:.3e}, largest residual {:.1e}", worst,
                                   worst_residual);
        }
        results.push_back(r);
    }

    {
        const auto p = polarization_trials(4, 4, 100, options.seed);
        CheckResult r{"polarization", p.passed && options.fault != "polarization",
                      fmt::format("reconstruction {:.1e}, zero case {:.1e}, identity case {:.1e}",
                                  p.max_reconstruction_error, p.max_zero_case_error, p.max_identity_case_error)};
        results.push_back(r);
    }

    {
        Scenario s;
        s.hbar = 1.0;
        s.lambda = 1.0;
        s.mean_x = 0.4;
        s.mean_p = -0.3;
        s.width = 0.6;
        s.grid.n = {options.grid_n, options.grid_n, options.grid_n};
        s.grid.auto_length = {true, true, true};
        const auto gaussian = run_backend(s, Backend::gaussian);
        const auto grid = run_backend(s, Backend::grid);
        const double diff = max_relative_difference(gaussian, grid);
        const bool ok = diff <= kGridTolerance && options.fault != "backend_agreement";
        results.push_back({"backend_agreement", ok,
                           fmt::format("n = {}, largest relative difference {:.3e}", options.grid_n, diff)});
    }
    return results;
}

int cmd_derive(std::ostream &out) {
    out << derive_text();
    return kExitOk;
}

int cmd_report(const std::filesystem::path &config, const CommandOptions &options, std::ostream &out,
               std::ostream &err) {
    return guarded(err, [&] {
        const Scenario s = load_with_overrides(config, options);
        const auto dir = prepare_out_dir(options);
        std::vector<MeasurementReport> reports;
        bool satisfied = true;
        for (auto backend : backends_of(s.backend)) {
            reports.push_back(run_backend(s, backend));
            const auto records = evaluate(reports.back());
            satisfied = satisfied && all_satisfied(records);
            write_file_atomically(dir / fmt::format("inequalities_{}.csv", backend_name(backend)),
                                  records_csv(records));
            out << summary_text(reports.back(), records);
        }
        write_file_atomically(dir / "deltas.csv", deltas_csv(reports));
        if (reports.size() == 2) {
            const double diff = max_relative_difference(reports[0], reports[1]);
            out << fmt::format("backend agreement: largest relative difference {:.3e} ({})\n", diff,
                               diff <= kGridTolerance ? "ok" : "exceeds 1e-5");
        }
        if (!satisfied) {
            err << "inequality violated\n";
            return kExitViolation;
        }
        return kExitOk;
    });
}

int cmd_superposition(const std::filesystem::path &config, const CommandOptions &options, std::ostream &out,
                      std::ostream &err) {
    return guarded(err, [&] {
        const Scenario s = load_with_overrides(config, options);
        const auto dir = prepare_out_dir(options);
        const auto result = run_superposition(s);
        for (const auto &w : result.warnings) {
            err << "warning: " << w << '\n';
        }
        std::string csv = "packet,c_squared,region_mass,x_lo,x_hi,p_lo,p_hi\n";
        for (const auto &row : result.rows) {
            csv += fmt::format("{},{},{},{},{},{},{}\n", row.packet, format_double(row.weight),
                               format_double(row.mass), format_double(row.region.x_lo),
                               format_double(row.region.x_hi), format_double(row.region.p_lo),
                               format_double(row.region.p_hi));
            out << fmt::format("packet {}: |c|^2 = {:.6f}  region mass = {:.6f}\n", row.packet, row.weight,
                               row.mass);
        }
        write_file_atomically(dir / "superposition.csv", csv);
        std::ostringstream dist;
        write_distribution_csv(dist, result.distribution);
        write_file_atomically(dir / "distribution.csv", dist.str());
        return kExitOk;
    });
}

int cmd_sweep(const std::filesystem::path &config, const std::vector<double> &lambdas, const CommandOptions &options,
              std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        const Scenario s = load_with_overrides(config, options);
        if (lambdas.empty()) {
            throw ConfigError("field 'lambdas': at least one value is required");
        }
        const auto dir = prepare_out_dir(options);
        bool satisfied = true;
        for (auto backend : backends_of(s.backend)) {
            const auto rows = lambda_sweep(lambdas, [&](double lambda) {
                Scenario copy = s;
                copy.lambda = lambda;
                return run_backend(copy, backend);
            });
            for (const auto &row : rows) {
                if (!row.ok) {
                    err << fmt::format("warning: {} backend, lambda = {}: {}\n", backend_name(backend), row.lambda,
                                       row.error);
                    continue;
                }
                satisfied = satisfied && all_satisfied(row.records);
                out << fmt::format("{} lambda = {:<10g} ei_x = {:.10f}  ei_p = {:.10f}  product = {:.10f}\n",
                                   backend_name(backend), row.lambda, row.report.deltas.ei_x,
                                   row.report.deltas.ei_p, row.report.deltas.ei_x * row.report.deltas.ei_p);
            }
            write_file_atomically(dir / fmt::format("sweep_{}.csv", backend_name(backend)), sweep_csv(rows));
        }
        return satisfied ? kExitOk : kExitViolation;
    });
}

int cmd_sample(const std::filesystem::path &config, std::size_t count, const CommandOptions &options,
               std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        const Scenario s = load_with_overrides(config, options);
        const auto dir = prepare_out_dir(options);
        std::vector<std::string> warnings;
        const auto dist = outcome_distribution(scenario_grid_state(s, &warnings), s.coupling);
        for (const auto &w : warnings) {
            err << "warning: " << w << '\n';
        }
        const auto samples = sample_outcomes(dist, count, s.seed);
        std::string csv = "muX,muP\n";
        double sx = 0.0, sp = 0.0;
        for (const auto &[x, p] : samples) {
            csv += format_double(x) + ',' + format_double(p) + '\n';
            sx += x;
            sp += p;
        }
        write_file_atomically(dir / "samples.csv", csv);
        const double n = static_cast<double>(samples.size());
        out << fmt::format("{} samples (seed {}): mean muX = {:.6f}, mean muP = {:.6f}; lattice means {:.6f}, {:.6f}\n",
                           samples.size(), s.seed, sx / n, sp / n, dist.mean_x(), dist.mean_p());
        return kExitOk;
    });
}

int cmd_check(const CheckOptions &options, std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        const auto results = run_checks(options);
        const CheckResult *first_failure = nullptr;
        for (const auto &r : results) {
            out << fmt::format("{} {}: {}\n", r.passed ? "ok  " : "FAIL", r.name, r.detail);
            if (!r.passed && first_failure == nullptr) {
                first_failure = &r;
            }
        }
        if (first_failure != nullptr) {
            err << "check failed: " << first_failure->name << '\n';
            return kExitViolation;
        }
        return kExitOk;
    });
}

}  // namespace akmeter
