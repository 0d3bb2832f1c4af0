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

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "akmeter/gaussian.hpp"
#include "akmeter/grid.hpp"

namespace akmeter {

enum class Backend : uint8_t { gaussian, grid };

std::string_view backend_name(Backend backend);

inline constexpr double kExactTolerance = 1e-9;
inline constexpr double kGridTolerance = 1e-5;

/// Every rms quantity of one measurement.
struct Deltas {
    double x_i = 0, p_i = 0;
    double ei_x = 0, ei_p = 0;
    double ef_x = 0, ef_p = 0;
    double d_x = 0, d_p = 0;
    double mu_x_f = 0, mu_p_f = 0;
    double x_f = 0, p_f = 0;

    static constexpr std::size_t kCount = 12;
    static constexpr std::array<std::string_view, kCount> kNames = {
        "x_i", "p_i", "ei_x", "ei_p", "ef_x", "ef_p", "d_x", "d_p", "mu_x_f", "mu_p_f", "x_f", "p_f"};

    std::array<double, kCount> values() const;
};

/// Expectations of the error operators; all four vanish for an unbiased process.
struct MeanErrors {
    double ei_x = 0, ei_p = 0;
    double ef_x = 0, ef_p = 0;

    double max_abs() const;
};

struct MeasurementReport {
    Deltas deltas;
    MeanErrors mean_errors;
    double hbar = 1.0;
    Backend backend = Backend::gaussian;

    double tolerance() const { return backend == Backend::grid ? kGridTolerance : kExactTolerance; }
};

struct InequalityRecord {
    std::string name;
    double lhs = 0;
    double bound = 0;
    double margin = 0;
    bool satisfied = false;
};

/// Exactly 11 records, in order: kennard_initial, retrodictive_error,
/// predictive_error, the four error-disturbance products, ak_extended,
/// cross_x_f_mu_p_f, cross_mu_x_f_p_f, kennard_final.
std::vector<InequalityRecord> evaluate(const MeasurementReport &report);

bool all_satisfied(std::span<const InequalityRecord> records);

/// |Var(out) - Var(in) - error^2| for the two pointers and the two final system observables.
struct VarianceResiduals {
    double mu_x_f = 0;
    double mu_p_f = 0;
    double x_f = 0;
    double p_f = 0;

    double max() const;
};

VarianceResiduals variance_addition(const MeasurementReport &report);

/// Symbolic derivation evaluated at one (coupling, hbar).
struct GaussianModel {
    Matrix6 transfer;
    std::array<NumericLinearForm, 6> errors;  // indexed by ErrorKind
    double hbar = 1.0;
};

GaussianModel gaussian_model(double coupling, double hbar);

MeasurementReport gaussian_report(const GaussianState &initial, const GaussianModel &model);
MeasurementReport gaussian_report(const GaussianState &initial, double coupling = 1.0);

MeasurementReport grid_report(const GridMeasurement &measurement, double hbar);

/// |a - b| / max(|a|, |b|), and 0 when both vanish.
double relative_difference(double a, double b);

/// Largest entrywise relative difference between the Delta records of two reports.
double max_relative_difference(const MeasurementReport &a, const MeasurementReport &b);

struct PolarizationResult {
    bool passed = false;
    double max_reconstruction_error = 0;  // four-term identity, random A
    double max_zero_case_error = 0;       // A with <psi phi|A|psi phi> = 0 for all psi
    double max_identity_case_error = 0;   // A = 1, hypothesis fails, identity still holds
};

inline constexpr std::size_t kPolarizationMaxDim = 16;
inline constexpr double kPolarizationTolerance = 1e-10;

/// Dense-matrix check of the product-state polarization argument.
/// Throws DimensionError if either dimension is 0 or exceeds kPolarizationMaxDim.
PolarizationResult polarization_trials(std::size_t dim1, std::size_t dim2, std::size_t trials, uint64_t seed);
bool polarization_check(std::size_t dim1, std::size_t dim2, std::size_t trials, uint64_t seed);

struct SweepRow {
    double lambda = 0;
    bool ok = false;
    std::string error;
    MeasurementReport report;
    std::vector<InequalityRecord> records;
};

/// One row per lambda, in input order. Rows are built concurrently; a row whose
/// builder throws is marked failed with the message instead of aborting the sweep.
std::vector<SweepRow> lambda_sweep(std::span<const double> lambdas,
                                   const std::function<MeasurementReport(double)> &build);

/// `name,lhs,bound,margin,satisfied`.
std::string records_csv(std::span<const InequalityRecord> records);

/// `quantity,<backend>` or, for two reports, `quantity,<a>,<b>,relative_difference`.
std::string deltas_csv(std::span<const MeasurementReport> reports);

/// `lambda,status,<12 deltas>,<11 margins>`; failed rows carry nan.
std::string sweep_csv(std::span<const SweepRow> rows);

/// Multi-line human summary of one report.
std::string summary_text(const MeasurementReport &report, std::span<const InequalityRecord> records);

}  // namespace akmeter
