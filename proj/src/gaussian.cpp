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

#include "akmeter/gaussian.hpp"

#include <cmath>
#include <complex>
#include <string>

#include <fmt/format.h>

#include "akmeter/errors.hpp"

namespace akmeter {

Matrix6 symplectic_form() {
    Matrix6 omega = Matrix6::Zero();
    for (int mode = 0; mode < 3; ++mode) {
        omega(2 * mode, 2 * mode + 1) = 1.0;
        omega(2 * mode + 1, 2 * mode) = -1.0;
    }
    return omega;
}

double admissibility_margin(const Matrix6 &cov, double hbar) {
    using Complex6 = Eigen::Matrix<std::complex<double>, 6, 6>;
    const Complex6 h = cov.cast<std::complex<double>>() +
                       std::complex<double>(0.0, hbar / 2.0) * symplectic_form().cast<std::complex<double>>();
    Eigen::SelfAdjointEigenSolver<Complex6> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

GaussianState::GaussianState(const Vector6 &mean, const Matrix6 &cov, double hbar)
    : mean_(mean), cov_(cov), hbar_(hbar) {
    if (!(hbar > 0.0) || !std::isfinite(hbar)) {
        throw DomainError("hbar must be positive");
    }
    if (!mean.allFinite() || !cov.allFinite()) {
        throw AdmissibilityError("moments must be finite");
    }
    const double scale = std::max(1.0, cov.cwiseAbs().maxCoeff());
    if ((cov - cov.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
        throw AdmissibilityError("covariance matrix is not symmetric");
    }
    cov_ = 0.5 * (cov + cov.transpose());
    const double margin = admissibility_margin(cov_, hbar);
    if (margin < -kAdmissibilityTolerance * scale) {
        throw AdmissibilityError(
            fmt::format("covariance violates cov + (i hbar/2) Omega >= 0 (min eigenvalue {:.3e})", margin));
    }
}

double GaussianState::variance(Generator g) const {
    const auto i = static_cast<Eigen::Index>(index_of(g));
    return cov_(i, i);
}

double GaussianState::stddev(Generator g) const { return std::sqrt(std::max(0.0, variance(g))); }

ApparatusBlock ak_apparatus_state(double lambda, double hbar) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw DomainError("lambda must be positive");
    }
    if (!(hbar > 0.0) || !std::isfinite(hbar)) {
        throw DomainError("hbar must be positive");
    }
    ApparatusBlock block;
    block.mean.setZero();
    block.cov.setZero();
    // Each meter is a minimum-uncertainty Gaussian: |phi|^2 ~ exp(-2 muX^2 / lambda^2)
    // and exp(-2 lambda^2 muP^2 / hbar^2).
    const double var_mu_x = lambda * lambda / 4.0;
    const double var_mu_p = hbar * hbar / (4.0 * lambda * lambda);
    block.cov(0, 0) = var_mu_x;
    block.cov(1, 1) = hbar * hbar / (4.0 * var_mu_x);
    block.cov(2, 2) = var_mu_p;
    block.cov(3, 3) = hbar * hbar / (4.0 * var_mu_p);
    return block;
}

Eigen::Matrix2d minimum_uncertainty_cov(double width, double hbar) {
    if (!(width > 0.0) || !std::isfinite(width)) {
        throw DomainError("system width must be positive");
    }
    Eigen::Matrix2d cov = Eigen::Matrix2d::Zero();
    cov(0, 0) = width * width;
    cov(1, 1) = hbar * hbar / (4.0 * width * width);
    return cov;
}

GaussianState compose_product(const Eigen::Vector2d &system_mean, const Eigen::Matrix2d &system_cov,
                              const ApparatusBlock &apparatus, double hbar) {
    Vector6 mean;
    mean << system_mean, apparatus.mean;
    Matrix6 cov = Matrix6::Zero();
    cov.topLeftCorner<2, 2>() = system_cov;
    cov.bottomRightCorner<4, 4>() = apparatus.cov;
    return GaussianState(mean, cov, hbar);
}

NumericLinearForm evaluate_form(const LinearForm &form, double hbar) {
    NumericLinearForm out;
    auto real_part = [&](const ExactScalar &s) {
        const auto v = s.evaluate(hbar);
        if (std::abs(v.imag()) > 1e-12 * std::max(1.0, std::abs(v.real()))) {
            throw DomainError("linear form is not Hermitian");
        }
        return v.real();
    };
    for (std::size_t j = 0; j < kGeneratorCount; ++j) {
        out.coefficients(static_cast<Eigen::Index>(j)) = real_part(form.coefficients[j]);
    }
    out.constant = real_part(form.constant);
    return out;
}

Matrix6 transfer_matrix(const HeisenbergFinals &finals, double hbar) {
    Matrix6 s;
    for (std::size_t j = 0; j < kGeneratorCount; ++j) {
        const auto form = evaluate_form(linear_part(finals.finals[j]), hbar);
        if (form.constant != 0.0) {
            throw DomainError("Heisenberg final has a constant offset; not a linear canonical map");
        }
        s.row(static_cast<Eigen::Index>(j)) = form.coefficients.transpose();
    }
    return s;
}

Matrix6 ak_transfer_matrix(double coupling, double hbar) {
    return transfer_matrix(heisenberg_finals(ak_generator(rational_from_double(coupling))), hbar);
}

GaussianState evolve(const GaussianState &state, const Matrix6 &transfer) {
    return GaussianState(transfer * state.mean(), transfer * state.cov() * transfer.transpose(), state.hbar());
}

QuadraticObservable square(const NumericLinearForm &form) {
    // (v.q + c)^2 = q^T (v v^T) q + 2 c v.q + c^2; the commutator part of v v^T
    // is antisymmetric and drops out.
    QuadraticObservable out;
    out.matrix = form.coefficients * form.coefficients.transpose();
    out.linear = 2.0 * form.constant * form.coefficients;
    out.constant = form.constant * form.constant;
    return out;
}

double expectation(const GaussianState &state, const QuadraticObservable &obs) {
    const auto &m = state.mean();
    return (obs.matrix * state.cov()).trace() + m.dot(obs.matrix * m) + obs.linear.dot(m) + obs.constant;
}

double rms_value(const GaussianState &state, const NumericLinearForm &form) {
    return std::sqrt(std::max(0.0, expectation(state, square(form))));
}

double rms_value(const GaussianState &state, const LinearForm &form) {
    return rms_value(state, evaluate_form(form, state.hbar()));
}

PointerVariances pointer_variances(const GaussianState &after) {
    return PointerVariances{after.variance(Generator::muX), after.variance(Generator::muP),
                            after.variance(Generator::x), after.variance(Generator::p)};
}

}  // namespace akmeter
