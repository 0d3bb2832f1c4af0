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
#include <functional>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "akmeter/commands.hpp"
#include "akmeter/errors.hpp"
#include "akmeter/report.hpp"

using namespace akmeter;

namespace {

// Trapezoid rule on [-half, half]; spectrally accurate for Gaussians.
double integrate(const std::function<double(double)> &f, double half, int points = 4001) {
    const double h = 2.0 * half / (points - 1);
    double total = 0.0;
    for (int i = 0; i < points; ++i) {
        const double w = (i == 0 || i == points - 1) ? 0.5 : 1.0;
        total += w * f(-half + i * h);
    }
    return total * h;
}

GaussianState matched_state(double lambda, double hbar) {
    return compose_product(Eigen::Vector2d(0.0, 0.0), minimum_uncertainty_cov(lambda / std::sqrt(2.0), hbar),
                           ak_apparatus_state(lambda, hbar), hbar);
}

}  // namespace

TEST(Gaussian, apparatus_moments_match_quadrature) {
    for (double hbar : {1.0, 0.37}) {
        for (double lambda : {0.5, 1.0, 2.3}) {
            const double h = 2.0 * std::numbers::pi * hbar;
            // phi(muX, muP) = (2/sqrt(h)) fx(muX) fp(muP)
            auto fx = [&](double m) { return std::exp(-m * m / (lambda * lambda)); };
            auto fp = [&](double m) { return std::exp(-lambda * lambda * m * m / (hbar * hbar)); };
            const double rx = 10.0 * lambda;
            const double rp = 10.0 * hbar / lambda;
            const double nx = integrate([&](double m) { return fx(m) * fx(m); }, rx);
            const double np = integrate([&](double m) { return fp(m) * fp(m); }, rp);
            EXPECT_NEAR(4.0 / h * nx * np, 1.0, 1e-12);

            const double var_mu_x = integrate([&](double m) { return m * m * fx(m) * fx(m); }, rx) / nx;
            const double var_mu_p = integrate([&](double m) { return m * m * fp(m) * fp(m); }, rp) / np;
            // Var(pi) = hbar^2 int |phi'|^2 for a real wavefunction.
            const double var_pi_x = hbar * hbar *
                                    integrate([&](double m) {
                                        const double d = -2.0 * m / (lambda * lambda) * fx(m);
                                        return d * d;
                                    }, rx) / nx;
            const double var_pi_p = hbar * hbar *
                                    integrate([&](double m) {
                                        const double d = -2.0 * lambda * lambda * m / (hbar * hbar) * fp(m);
                                        return d * d;
                                    }, rp) / np;

            const auto block = ak_apparatus_state(lambda, hbar);
            EXPECT_NEAR(block.cov(0, 0), var_mu_x, 1e-12);
            EXPECT_NEAR(block.cov(1, 1), var_pi_x, 1e-12);
            EXPECT_NEAR(block.cov(2, 2), var_mu_p, 1e-12);
            EXPECT_NEAR(block.cov(3, 3), var_pi_p, 1e-12);
            EXPECT_TRUE(block.mean.isZero());
        }
    }
}

TEST(Gaussian, apparatus_rejects_bad_lambda) {
    EXPECT_THROW(ak_apparatus_state(0.0, 1.0), DomainError);
    EXPECT_THROW(ak_apparatus_state(-1.0, 1.0), DomainError);
    EXPECT_THROW(ak_apparatus_state(1.0, 0.0), DomainError);
}

TEST(Gaussian, admissibility) {
    Vector6 mean = Vector6::Zero();
    Matrix6 cov = Matrix6::Identity() * 0.5;
    EXPECT_NO_THROW(GaussianState(mean, cov, 1.0));
    cov(0, 0) = 0.1;  // Var x Var p = 0.05 < 1/4
    EXPECT_THROW(GaussianState(mean, cov, 1.0), AdmissibilityError);
    cov = Matrix6::Identity();
    cov(0, 1) = 0.3;
    EXPECT_THROW(GaussianState(mean, cov, 1.0), AdmissibilityError);
}

TEST(Gaussian, transfer_matrix_is_symplectic) {
    for (double g : {1.0, 0.5, 2.0}) {
        const Matrix6 s = ak_transfer_matrix(g, 1.0);
        const Matrix6 omega = symplectic_form();
        EXPECT_LT((s * omega * s.transpose() - omega).cwiseAbs().maxCoeff(), 1e-14);
    }
}

TEST(Gaussian, evolve_moves_pointer_mean) {
    const auto init = compose_product(Eigen::Vector2d(1.5, -0.75), minimum_uncertainty_cov(0.7, 1.0),
                                      ak_apparatus_state(1.0, 1.0), 1.0);
    const auto after = evolve(init, ak_transfer_matrix(1.0, 1.0));
    EXPECT_NEAR(after.mean(Generator::muX), 1.5, 1e-15);
    EXPECT_NEAR(after.mean(Generator::muP), -0.75, 1e-15);
    EXPECT_NEAR(after.mean(Generator::x), 1.5, 1e-15);
}

TEST(Gaussian, closed_form_errors) {
    const double hbar = 1.0;
    const auto ops = derive_error_disturbance(ak_generator());
    for (double lambda : {0.5, 1.0, 2.0}) {
        const auto s = matched_state(lambda, hbar);
        EXPECT_NEAR(rms_value(s, linear_part(ops.eXi)), lambda / std::sqrt(2.0), 1e-12);
        EXPECT_NEAR(rms_value(s, linear_part(ops.eXf)), lambda / std::sqrt(2.0), 1e-12);
        EXPECT_NEAR(rms_value(s, linear_part(ops.ePi)), hbar / (std::sqrt(2.0) * lambda), 1e-12);
        EXPECT_NEAR(rms_value(s, linear_part(ops.ePf)), hbar / (std::sqrt(2.0) * lambda), 1e-12);
        EXPECT_NEAR(rms_value(s, linear_part(ops.dX)), lambda, 1e-12);
        EXPECT_NEAR(rms_value(s, linear_part(ops.dP)), hbar / lambda, 1e-12);
    }
}

TEST(Gaussian, errors_do_not_depend_on_system_state) {
    std::mt19937_64 rng(4);
    const auto ops = derive_error_disturbance(ak_generator());
    for (int trial = 0; trial < 20; ++trial) {
        const auto r = random_gaussian_scenario(rng);
        EXPECT_NEAR(rms_value(r.state, linear_part(ops.eXi)), r.lambda / std::sqrt(2.0), 1e-12);
        EXPECT_NEAR(rms_value(r.state, linear_part(ops.dP)), 1.0 / r.lambda, 1e-12);
    }
}

TEST(Gaussian, pointer_variances_add) {
    const double sigma = 0.8, lambda = 1.3, hbar = 1.0;
    const auto init = compose_product(Eigen::Vector2d(0.2, 0.1), minimum_uncertainty_cov(sigma, hbar),
                                      ak_apparatus_state(lambda, hbar), hbar);
    const auto v = pointer_variances(evolve(init, ak_transfer_matrix(1.0, hbar)));
    EXPECT_NEAR(v.mu_x_f, sigma * sigma + lambda * lambda / 2.0, 1e-12);
    EXPECT_NEAR(v.mu_p_f, hbar * hbar / (4 * sigma * sigma) + hbar * hbar / (2 * lambda * lambda), 1e-12);
    EXPECT_NEAR(v.x_f, sigma * sigma + lambda * lambda, 1e-12);
    EXPECT_NEAR(v.p_f, hbar * hbar / (4 * sigma * sigma) + hbar * hbar / (lambda * lambda), 1e-12);
}

TEST(Gaussian, evolution_preserves_admissibility) {
    std::mt19937_64 rng(8);
    const Matrix6 s = ak_transfer_matrix(1.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const auto r = random_gaussian_scenario(rng);
        const auto after = evolve(r.state, s);
        EXPECT_GE(admissibility_margin(after.cov(), 1.0), -1e-10);
    }
}

TEST(Gaussian, rms_includes_constant_and_mean) {
    const auto s = matched_state(1.0, 1.0);
    NumericLinearForm form;
    form.coefficients = Vector6::Zero();
    form.constant = 3.0;
    EXPECT_DOUBLE_EQ(rms_value(s, form), 3.0);
}

TEST(Gaussian, non_hermitian_form_rejected) {
    LinearForm form;
    form.coefficients[0] = ExactScalar::imaginary_unit();
    EXPECT_THROW(evaluate_form(form, 1.0), DomainError);
}
