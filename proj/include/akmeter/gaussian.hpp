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

// Second-moment backend. Because the measurement coupling is bilinear, the
// Heisenberg finals are linear in the initial generators and every rms error,
// disturbance and pointer spread is a closed-form function of the initial mean
// vector and symmetrized covariance matrix.

#pragma once

#include <Eigen/Dense>

#include "akmeter/ccr.hpp"

namespace akmeter {

using Vector6 = Eigen::Matrix<double, 6, 1>;
using Matrix6 = Eigen::Matrix<double, 6, 6>;

// Relative to the largest covariance entry (at least 1).
inline constexpr double kAdmissibilityTolerance = 1e-10;

/// Omega with [q_j, q_k] = i*hbar*Omega_jk in (x, p, muX, piX, muP, piP) order.
Matrix6 symplectic_form();

/// Mean vector and symmetrized covariance of (x, p, muX, piX, muP, piP).
class GaussianState {
  public:
    /// Throws AdmissibilityError unless cov is symmetric and cov + (i hbar / 2) Omega >= 0.
    GaussianState(const Vector6 &mean, const Matrix6 &cov, double hbar);

    const Vector6 &mean() const { return mean_; }
    const Matrix6 &cov() const { return cov_; }
    double hbar() const { return hbar_; }

    double mean(Generator g) const { return mean_(static_cast<Eigen::Index>(index_of(g))); }
    double variance(Generator g) const;
    double stddev(Generator g) const;

  private:
    Vector6 mean_;
    Matrix6 cov_;
    double hbar_;
};

/// Smallest eigenvalue of the Hermitian matrix cov + (i hbar / 2) Omega.
double admissibility_margin(const Matrix6 &cov, double hbar);

struct ApparatusBlock {
    Eigen::Vector4d mean;  // (muX, piX, muP, piP)
    Eigen::Matrix4d cov;
};

/// Moments of the meter wavefunction (2/sqrt(h)) exp(-muX^2/lambda^2 - lambda^2 muP^2/hbar^2),
/// h = 2 pi hbar: Var(muX) = lambda^2/4, Var(piX) = hbar^2/lambda^2,
/// Var(muP) = hbar^2/(4 lambda^2), Var(piP) = lambda^2, zero means.
ApparatusBlock ak_apparatus_state(double lambda, double hbar);

/// Covariance of a minimum-uncertainty system packet with position spread `width`.
Eigen::Matrix2d minimum_uncertainty_cov(double width, double hbar);

GaussianState compose_product(const Eigen::Vector2d &system_mean, const Eigen::Matrix2d &system_cov,
                              const ApparatusBlock &apparatus, double hbar);

/// Row j holds the numeric coefficients of the Heisenberg final of generator j.
Matrix6 transfer_matrix(const HeisenbergFinals &finals, double hbar);

/// Transfer matrix of the measurement coupling at strength g, derived symbolically.
Matrix6 ak_transfer_matrix(double coupling, double hbar);

/// mean <- S mean, cov <- S cov S^T.
GaussianState evolve(const GaussianState &state, const Matrix6 &transfer);

/// Linear form with numeric coefficients (hbar substituted).
struct NumericLinearForm {
    Vector6 coefficients;
    double constant = 0.0;
};

/// Throws DomainError if a coefficient has a non-zero imaginary part (non-Hermitian form).
NumericLinearForm evaluate_form(const LinearForm &form, double hbar);

/// <q^T M q + l^T q + c> for a symmetric M.
struct QuadraticObservable {
    Matrix6 matrix = Matrix6::Zero();
    Vector6 linear = Vector6::Zero();
    double constant = 0.0;
};

QuadraticObservable square(const NumericLinearForm &form);
double expectation(const GaussianState &state, const QuadraticObservable &obs);

/// sqrt(<(v.q + c)^2>) in the given state.
double rms_value(const GaussianState &state, const LinearForm &form);
double rms_value(const GaussianState &state, const NumericLinearForm &form);

struct PointerVariances {
    double mu_x_f;
    double mu_p_f;
    double x_f;
    double p_f;
};

PointerVariances pointer_variances(const GaussianState &after);

}  // namespace akmeter
