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

#include "akmeter/report.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <random>

#include <fmt/format.h>

#include "akmeter/csv.hpp"
#include "akmeter/errors.hpp"
#include "akmeter/parallel.hpp"

namespace akmeter {

namespace {

InequalityRecord record(std::string name, double lhs, double bound, double tolerance) {
    const double margin = lhs - bound;
    return {std::move(name), lhs, bound, margin, margin >= -tolerance};
}

double linear_mean(const GaussianState &state, const NumericLinearForm &form) {
    return form.coefficients.dot(state.mean()) + form.constant;
}

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

class RandomSource {
  public:
    explicit RandomSource(uint64_t seed) : rng_(seed) {}

    std::complex<double> complex_normal() { return {normal_(rng_), normal_(rng_)}; }

    ComplexVector vector(std::size_t n) {
        ComplexVector v(static_cast<Eigen::Index>(n));
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            v(i) = complex_normal();
        }
        return v;
    }

    ComplexMatrix matrix(std::size_t n) {
        ComplexMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            for (Eigen::Index j = 0; j < m.cols(); ++j) {
                m(i, j) = complex_normal();
            }
        }
        return m;
    }

  private:
    std::mt19937_64 rng_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

ComplexVector kron(const ComplexVector &a, const ComplexVector &b) {
    ComplexVector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        out.segment(i * b.size(), b.size()) = a(i) * b;
    }
    return out;
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

std::complex<double> element(const ComplexVector &u, const ComplexMatrix &a, const ComplexVector &v) {
    return u.dot(a * v);  // Eigen's dot conjugates the left operand
}

// <u|A|v> = 1/4 sum_k i^-k <u + i^k v|A|u + i^k v>, using only diagonal elements.
std::complex<double> polarization(const ComplexVector &psi, const ComplexVector &psi2, const ComplexVector &phi,
                                  const ComplexMatrix &a) {
    std::complex<double> total = 0.0;
    std::complex<double> ik = 1.0;
    const std::complex<double> i(0.0, 1.0);
    for (int k = 0; k < 4; ++k) {
        const ComplexVector w = kron(ComplexVector(psi + ik * psi2), phi);
        total += std::conj(ik) * element(w, a, w);
        ik *= i;
    }
    return 0.25 * total;
}

std::string nan_or(double value, bool ok) {
    return ok ? format_double(value) : std::string("nan");
}

}  // namespace

std::string_view backend_name(Backend backend) {
    return backend == Backend::grid ? "grid" : "gaussian";
}

std::array<double, Deltas::kCount> Deltas::values() const {
    return {x_i, p_i, ei_x, ei_p, ef_x, ef_p, d_x, d_p, mu_x_f, mu_p_f, x_f, p_f};
}

double MeanErrors::max_abs() const {
    return std::max({std::abs(ei_x), std::abs(ei_p), std::abs(ef_x), std::abs(ef_p)});
}

std::vector<InequalityRecord> evaluate(const MeasurementReport &report) {
    const auto &d = report.deltas;
    const double h = report.hbar;
    const double tol = report.tolerance();
    return {
        record("kennard_initial", d.x_i * d.p_i, h / 2, tol),
        record("retrodictive_error", d.ei_x * d.ei_p, h / 2, tol),
        record("predictive_error", d.ef_x * d.ef_p, h / 2, tol),
        record("error_disturbance_ei_x_d_p", d.ei_x * d.d_p, h / 2, tol),
        record("error_disturbance_ei_p_d_x", d.ei_p * d.d_x, h / 2, tol),
        record("error_disturbance_ef_x_d_p", d.ef_x * d.d_p, h / 2, tol),
        record("error_disturbance_ef_p_d_x", d.ef_p * d.d_x, h / 2, tol),
        record("ak_extended", d.mu_x_f * d.mu_p_f, h, tol),
        record("cross_x_f_mu_p_f", d.x_f * d.mu_p_f, h, tol),
        record("cross_mu_x_f_p_f", d.mu_x_f * d.p_f, h, tol),
        record("kennard_final", d.x_f * d.p_f, h / 2, tol),
    };
}

bool all_satisfied(std::span<const InequalityRecord> records) {
    return std::all_of(records.begin(), records.end(), [](const auto &r) { return r.satisfied; });
}

double VarianceResiduals::max() const { return std::max({mu_x_f, mu_p_f, x_f, p_f}); }

VarianceResiduals variance_addition(const MeasurementReport &report) {
    const auto &d = report.deltas;
    auto residual = [](double out, double in, double err) { return std::abs(out * out - (in * in + err * err)); };
    return {residual(d.mu_x_f, d.x_i, d.ei_x), residual(d.mu_p_f, d.p_i, d.ei_p), residual(d.x_f, d.x_i, d.d_x),
            residual(d.p_f, d.p_i, d.d_p)};
}

GaussianModel gaussian_model(double coupling, double hbar) {
    const auto finals = heisenberg_finals(ak_generator(rational_from_double(coupling)));
    const auto ops = error_disturbance_from_finals(finals);
    GaussianModel model;
    model.transfer = transfer_matrix(finals, hbar);
    for (auto kind : kAllErrorKinds) {
        model.errors[static_cast<std::size_t>(kind)] = evaluate_form(linear_part(ops[kind]), hbar);
    }
    model.hbar = hbar;
    return model;
}

MeasurementReport gaussian_report(const GaussianState &initial, const GaussianModel &model) {
    if (initial.hbar() != model.hbar) {
        throw DomainError("state and model use different hbar");
    }
    const GaussianState after = evolve(initial, model.transfer);
    auto err = [&](ErrorKind kind) { return model.errors[static_cast<std::size_t>(kind)]; };

    MeasurementReport report;
    report.hbar = initial.hbar();
    report.backend = Backend::gaussian;
    auto &d = report.deltas;
    d.x_i = initial.stddev(Generator::x);
    d.p_i = initial.stddev(Generator::p);
    d.ei_x = rms_value(initial, err(ErrorKind::eXi));
    d.ei_p = rms_value(initial, err(ErrorKind::ePi));
    d.ef_x = rms_value(initial, err(ErrorKind::eXf));
    d.ef_p = rms_value(initial, err(ErrorKind::ePf));
    d.d_x = rms_value(initial, err(ErrorKind::dX));
    d.d_p = rms_value(initial, err(ErrorKind::dP));
    d.mu_x_f = after.stddev(Generator::muX);
    d.mu_p_f = after.stddev(Generator::muP);
    d.x_f = after.stddev(Generator::x);
    d.p_f = after.stddev(Generator::p);

    auto &m = report.mean_errors;
    m.ei_x = linear_mean(initial, err(ErrorKind::eXi));
    m.ei_p = linear_mean(initial, err(ErrorKind::ePi));
    m.ef_x = linear_mean(initial, err(ErrorKind::eXf));
    m.ef_p = linear_mean(initial, err(ErrorKind::ePf));
    return report;
}

MeasurementReport gaussian_report(const GaussianState &initial, double coupling) {
    return gaussian_report(initial, gaussian_model(coupling, initial.hbar()));
}

MeasurementReport grid_report(const GridMeasurement &g, double hbar) {
    MeasurementReport report;
    report.hbar = hbar;
    report.backend = Backend::grid;
    auto &d = report.deltas;
    auto rms = [&](ErrorKind kind) { return g.rms[static_cast<std::size_t>(kind)]; };
    d.x_i = g.sd_x_i;
    d.p_i = g.sd_p_i;
    d.ei_x = rms(ErrorKind::eXi);
    d.ei_p = rms(ErrorKind::ePi);
    d.ef_x = rms(ErrorKind::eXf);
    d.ef_p = rms(ErrorKind::ePf);
    d.d_x = rms(ErrorKind::dX);
    d.d_p = rms(ErrorKind::dP);
    d.mu_x_f = g.sd_mu_x_f;
    d.mu_p_f = g.sd_mu_p_f;
    d.x_f = g.sd_x_f;
    d.p_f = g.sd_p_f;

    auto &m = report.mean_errors;
    m.ei_x = g.mean_mu_x_f - g.mean_x_i;
    m.ei_p = g.mean_mu_p_f - g.mean_p_i;
    m.ef_x = g.mean_mu_x_f - g.mean_x_f;
    m.ef_p = g.mean_mu_p_f - g.mean_p_f;
    return report;
}

double relative_difference(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

double max_relative_difference(const MeasurementReport &a, const MeasurementReport &b) {
    const auto va = a.deltas.values();
    const auto vb = b.deltas.values();
    double worst = 0.0;
    for (std::size_t i = 0; i < va.size(); ++i) {
        worst = std::max(worst, relative_difference(va[i], vb[i]));
    }
    return worst;
}

PolarizationResult polarization_trials(std::size_t dim1, std::size_t dim2, std::size_t trials, uint64_t seed) {
    if (dim1 == 0 || dim2 == 0 || dim1 > kPolarizationMaxDim || dim2 > kPolarizationMaxDim) {
        throw DimensionError(fmt::format("polarization check supports dimensions 1..{}, got ({}, {})",
                                         kPolarizationMaxDim, dim1, dim2));
    }
    RandomSource rng(seed);
    PolarizationResult result;
    const auto d1 = static_cast<Eigen::Index>(dim1);
    const auto d2 = static_cast<Eigen::Index>(dim2);
    for (std::size_t t = 0; t < trials; ++t) {
        ComplexVector phi = rng.vector(dim2);
        phi.normalize();
        ComplexVector psi = rng.vector(dim1);
        psi.normalize();
        ComplexVector psi2 = rng.vector(dim1);
        psi2.normalize();
        const ComplexVector left = kron(psi, phi);
        const ComplexVector right = kron(psi2, phi);

        const ComplexMatrix a = rng.matrix(dim1 * dim2);
        const auto direct = element(left, a, right);
        const double scale = std::max(1.0, a.norm());
        result.max_reconstruction_error =
            std::max(result.max_reconstruction_error, std::abs(polarization(psi, psi2, phi, a) - direct) / scale);

        // Sum of B (x) C terms with <phi|C|phi> = 0: every product-state diagonal vanishes.
        ComplexMatrix zero_case = ComplexMatrix::Zero(d1 * d2, d1 * d2);
        for (int term = 0; term < 2; ++term) {
            ComplexMatrix c = rng.matrix(dim2);
            c -= element(phi, c, phi) * ComplexMatrix::Identity(d2, d2);
            zero_case += kron(rng.matrix(dim1), c);
        }
        const double zero_scale = std::max(1.0, zero_case.norm());
        const double off_diagonal = std::abs(element(left, zero_case, right)) / zero_scale;
        const double reconstructed = std::abs(polarization(psi, psi2, phi, zero_case)) / zero_scale;
        result.max_zero_case_error = std::max({result.max_zero_case_error, off_diagonal, reconstructed});

        const ComplexMatrix identity = ComplexMatrix::Identity(d1 * d2, d1 * d2);
        result.max_identity_case_error =
            std::max(result.max_identity_case_error,
                     std::abs(polarization(psi, psi2, phi, identity) - element(left, identity, right)));
    }
    result.passed = result.max_reconstruction_error <= kPolarizationTolerance &&
                    result.max_zero_case_error <= kPolarizationTolerance &&
                    result.max_identity_case_error <= kPolarizationTolerance;
    return result;
}

bool polarization_check(std::size_t dim1, std::size_t dim2, std::size_t trials, uint64_t seed) {
    return polarization_trials(dim1, dim2, trials, seed).passed;
}

std::vector<SweepRow> lambda_sweep(std::span<const double> lambdas,
                                   const std::function<MeasurementReport(double)> &build) {
    std::vector<SweepRow> rows(lambdas.size());
    parallel_for(lambdas.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            auto &row = rows[i];
            row.lambda = lambdas[i];
            try {
                if (!(lambdas[i] > 0.0) || !std::isfinite(lambdas[i])) {
                    throw DomainError("lambda must be positive");
                }
                row.report = build(lambdas[i]);
                row.records = evaluate(row.report);
                row.ok = true;
            } catch (const std::exception &e) {
                row.ok = false;
                row.error = e.what();
            }
        }
    });
    return rows;
}

std::string records_csv(std::span<const InequalityRecord> records) {
    std::string out = "name,lhs,bound,margin,satisfied\n";
    for (const auto &r : records) {
        out += fmt::format("{},{},{},{},{}\n", r.name, format_double(r.lhs), format_double(r.bound),
                           format_double(r.margin), r.satisfied ? "true" : "false");
    }
    return out;
}

std::string deltas_csv(std::span<const MeasurementReport> reports) {
    std::string out = "quantity";
    for (const auto &r : reports) {
        out += fmt::format(",{}", backend_name(r.backend));
    }
    const bool compare = reports.size() == 2;
    if (compare) {
        out += ",relative_difference";
    }
    out += '\n';
    for (std::size_t i = 0; i < Deltas::kCount; ++i) {
        out += Deltas::kNames[i];
        for (const auto &r : reports) {
            out += ',' + format_double(r.deltas.values()[i]);
        }
        if (compare) {
            out += ',' + format_double(relative_difference(reports[0].deltas.values()[i],
                                                           reports[1].deltas.values()[i]));
        }
        out += '\n';
    }
    return out;
}

std::string sweep_csv(std::span<const SweepRow> rows) {
    static const std::vector<std::string> margin_names = [] {
        std::vector<std::string> names;
        for (const auto &r : evaluate(MeasurementReport{})) {
            names.push_back(r.name);
        }
        return names;
    }();
    std::string out = "lambda,status";
    for (auto name : Deltas::kNames) {
        out += fmt::format(",{}", name);
    }
    for (const auto &name : margin_names) {
        out += fmt::format(",margin_{}", name);
    }
    out += '\n';
    for (const auto &row : rows) {
        out += format_double(row.lambda);
        out += row.ok ? ",ok" : ",failed";
        const auto values = row.report.deltas.values();
        for (double v : values) {
            out += ',' + nan_or(v, row.ok);
        }
        for (std::size_t i = 0; i < margin_names.size(); ++i) {
            out += ',' + nan_or(row.ok ? row.records[i].margin : 0.0, row.ok);
        }
        out += '\n';
    }
    return out;
}

std::string summary_text(const MeasurementReport &report, std::span<const InequalityRecord> records) {
    std::string out = fmt::format("backend {} (hbar = {}, tolerance {:.0e})\n", backend_name(report.backend),
                                  report.hbar, report.tolerance());
    const auto values = report.deltas.values();
    for (std::size_t i = 0; i < Deltas::kCount; ++i) {
        out += fmt::format("  {:<8} {:.12g}\n", Deltas::kNames[i], values[i]);
    }
    for (const auto &r : records) {
        out += fmt::format("  {:<28} {:.12g} >= {:.12g}  margin {:+.3e}  {}\n", r.name, r.lhs, r.bound, r.margin,
                           r.satisfied ? "ok" : "VIOLATED");
    }
    return out;
}

}  // namespace akmeter
