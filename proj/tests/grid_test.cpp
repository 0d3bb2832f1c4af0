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

#include "akmeter/grid.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

#include "akmeter/errors.hpp"

using namespace akmeter;

namespace {

using Complex = std::complex<double>;
constexpr double kPi = std::numbers::pi;

Complex packet_amplitude(const GaussianPacket &g, double x, double hbar) {
    const double d = x - g.mean_x;
    return std::pow(2.0 * kPi * g.width * g.width, -0.25) * std::exp(-d * d / (4.0 * g.width * g.width)) *
           std::exp(Complex(0.0, g.mean_p * x / hbar));
}

// Continuous Fourier transform of packet_amplitude with the (2 pi hbar)^(-1/2) e^{-ikx/hbar} kernel.
Complex packet_momentum_amplitude(const GaussianPacket &g, double k, double hbar) {
    const double q = k - g.mean_p;
    const double s2 = g.width * g.width;
    return std::pow(2.0 * kPi * s2, -0.25) / std::sqrt(2.0 * kPi * hbar) * std::sqrt(4.0 * kPi * s2) *
           std::exp(-s2 * q * q / (hbar * hbar)) * std::exp(Complex(0.0, -q * g.mean_x / hbar));
}

GridState default_state(double mean_x = 0.3, double mean_p = -0.4) {
    return init_product_gaussian(make_axes(64, 20.0), mean_x, mean_p, std::sqrt(0.5), 1.0, 1.0);
}

double max_abs_diff(const GridState &a, const GridState &b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, std::abs(a.amplitudes()[i] - b.amplitudes()[i]));
    }
    return worst;
}

}  // namespace

TEST(Grid, axis_validation) {
    EXPECT_THROW((AxisSpec{12, 10.0}.validate()), DomainError);
    EXPECT_THROW((AxisSpec{4, 10.0}.validate()), DomainError);
    EXPECT_THROW((AxisSpec{16, -1.0}.validate()), DomainError);
    EXPECT_NO_THROW((AxisSpec{16, 1.0}.validate()));
}

TEST(Grid, axis_coordinates) {
    const AxisSpec a{8, 4.0};
    EXPECT_DOUBLE_EQ(a.coordinate(0, Representation::position, 1.0), -2.0);
    EXPECT_DOUBLE_EQ(a.coordinate(4, Representation::position, 1.0), 0.0);
    EXPECT_DOUBLE_EQ(a.conjugate_spacing(1.0), 2.0 * kPi / 4.0);
    EXPECT_DOUBLE_EQ(a.half_range(Representation::momentum, 1.0), 4.0 * 2.0 * kPi / 4.0);
}

TEST(Grid, fourier_pair_oracle) {
    const double hbar = 0.8;
    const GaussianPacket g{1.0, 0.3, 0.5, 0.9};
    const GridAxes axes = make_axes({64, 8, 8}, {20.0, 4.0, 4.0});
    GridState s(axes, hbar);
    for (std::size_t i = 0; i < 64; ++i) {
        s.mutable_amplitudes()[s.index(i, 0, 0)] =
            packet_amplitude(g, axes[0].coordinate(i, Representation::position, hbar), hbar);
    }
    const GridState m = to_representation(s, 0, Representation::momentum);
    double worst = 0.0;
    for (std::size_t i = 0; i < 64; ++i) {
        const double k = axes[0].coordinate(i, Representation::momentum, hbar);
        worst = std::max(worst, std::abs(m.amplitudes()[m.index(i, 0, 0)] - packet_momentum_amplitude(g, k, hbar)));
    }
    EXPECT_LT(worst, 1e-12);
}

TEST(Grid, transforms_are_unitary_and_invertible) {
    const GridState s = default_state();
    for (std::size_t axis = 0; axis < 3; ++axis) {
        const GridState m = to_representation(s, axis, Representation::momentum);
        EXPECT_NEAR(m.norm(), 1.0, 1e-12);
        const GridState back = to_representation(m, axis, Representation::position);
        EXPECT_LT(max_abs_diff(back, s), 1e-12);
    }
}

TEST(Grid, initial_state_is_normalized) {
    const GridState s = default_state();
    EXPECT_NEAR(s.norm(), 1.0, 1e-12);
    EXPECT_NEAR(s.mean(Generator::x), 0.3, 1e-10);
    EXPECT_NEAR(s.mean(Generator::p), -0.4, 1e-10);
    EXPECT_NEAR(s.variance(Generator::x), 0.5, 1e-10);
    EXPECT_NEAR(s.variance(Generator::p), 0.5, 1e-10);
    EXPECT_NEAR(s.variance(Generator::muX), 0.25, 1e-10);
    EXPECT_NEAR(s.variance(Generator::piX), 1.0, 1e-10);
    EXPECT_NEAR(s.variance(Generator::muP), 0.25, 1e-10);
    EXPECT_NEAR(s.variance(Generator::piP), 1.0, 1e-10);
}

TEST(Grid, single_packet_superposition_equals_product) {
    const auto axes = make_axes(32, 16.0);
    const GaussianPacket g{1.0, 0.5, 0.2, 0.8};
    const auto a = init_product_gaussian(axes, 0.5, 0.2, 0.8, 1.0, 1.0);
    const auto b = init_superposition(axes, std::span(&g, 1), 1.0, 1.0);
    EXPECT_LT(max_abs_diff(a, b), 1e-12);
}

TEST(Grid, packet_overlap_oracle) {
    const double hbar = 1.0;
    const GaussianPacket a{1.0, -0.5, 0.3, 0.7};
    const GaussianPacket b{1.0, 0.9, -0.4, 1.1};
    Complex numeric = 0.0;
    const int n = 8001;
    const double half = 20.0, h = 2 * half / (n - 1);
    for (int i = 0; i < n; ++i) {
        const double x = -half + i * h;
        numeric += std::conj(packet_amplitude(a, x, hbar)) * packet_amplitude(b, x, hbar) * h;
    }
    EXPECT_NEAR(packet_overlap(a, b, hbar), std::abs(numeric), 1e-12);
    EXPECT_NEAR(packet_overlap(a, a, hbar), 1.0, 1e-15);
}

TEST(Grid, overlapping_packets_warn) {
    const std::vector<GaussianPacket> packets = {{0.6, -0.5, 0.0, 0.7}, {0.8, 0.5, 0.0, 0.7}};
    std::vector<std::string> warnings;
    const auto s = init_superposition(make_axes(32, 16.0), packets, 1.0, 1.0, 1.0, &warnings);
    EXPECT_EQ(warnings.size(), 1u);
    EXPECT_NEAR(s.norm(), 1.0, 1e-12);
}

TEST(Grid, resolution_is_checked) {
    EXPECT_THROW(init_product_gaussian(make_axes(8, 20.0), 0.0, 0.0, 0.7, 1.0, 1.0), ResolutionError);
    EXPECT_THROW(init_product_gaussian(make_axes(64, 20.0), 9.0, 0.0, 0.7, 1.0, 1.0), ResolutionError);
    EXPECT_THROW(init_product_gaussian(make_axes(64, 20.0), 0.0, 0.0, -0.7, 1.0, 1.0), DomainError);
}

TEST(Grid, suggested_axes_pass_resolution) {
    const std::vector<GaussianPacket> packets = {{1.0, 2.0, -1.0, 0.5}};
    for (std::size_t n : {32u, 64u, 128u}) {
        const auto axes = suggest_axes(n, packets, 0.8, 1.0);
        EXPECT_NO_THROW(check_resolution(axes, packets, 0.8, 1.0));
    }
}

TEST(Grid, evolution_is_unitary) {
    const GridState s = default_state();
    const GridState u = apply_U(s);
    EXPECT_NEAR(u.norm(), 1.0, 1e-12);
    EXPECT_LT(max_abs_diff(apply_U_dagger(u), s), 1e-10);
    EXPECT_LT(max_abs_diff(apply_U(apply_U_dagger(s)), s), 1e-10);
}

TEST(Grid, evolution_matches_heisenberg_means) {
    for (double g : {1.0, 0.5}) {
        const auto s = init_product_gaussian(make_axes(64, 20.0), 0.8, -0.6, 0.7, 1.0, 1.0, g);
        const auto u = apply_U(s, g);
        EXPECT_NEAR(u.mean(Generator::muX), g * 0.8, 1e-10);
        EXPECT_NEAR(u.mean(Generator::muP), g * -0.6, 1e-10);
        EXPECT_NEAR(u.mean(Generator::x), 0.8, 1e-10);
        EXPECT_NEAR(u.mean(Generator::p), -0.6, 1e-10);
        // Var(muXf) = Var(muX) + g^2 Var(x) + g^4/4 Var(piP)
        EXPECT_NEAR(u.variance(Generator::muX), 0.25 + g * g * 0.49 + std::pow(g, 4) / 4.0, 1e-9);
    }
}

TEST(Grid, rms_errors_match_closed_forms) {
    const GridState s = default_state();
    EXPECT_NEAR(rms_error(s, ErrorKind::eXi), 1.0 / std::sqrt(2.0), 1e-9);
    EXPECT_NEAR(rms_error(s, ErrorKind::ePi), 1.0 / std::sqrt(2.0), 1e-9);
    EXPECT_NEAR(rms_error(s, ErrorKind::eXf), 1.0 / std::sqrt(2.0), 1e-9);
    EXPECT_NEAR(rms_error(s, ErrorKind::ePf), 1.0 / std::sqrt(2.0), 1e-9);
    EXPECT_NEAR(rms_error(s, ErrorKind::dX), 1.0, 1e-9);
    EXPECT_NEAR(rms_error(s, ErrorKind::dP), 1.0, 1e-9);
    const auto m = measure(s);
    for (auto kind : kAllErrorKinds) {
        EXPECT_NEAR(m.rms[static_cast<std::size_t>(kind)], rms_error(s, kind), 1e-12);
    }
}

TEST(Grid, outcome_distribution_moments) {
    const GridState s = default_state(0.3, -0.4);
    const auto dist = outcome_distribution(s);
    EXPECT_NEAR(dist.total_mass(), 1.0, 1e-12);
    EXPECT_NEAR(dist.mean_x(), 0.3, 1e-10);
    EXPECT_NEAR(dist.mean_p(), -0.4, 1e-10);
    EXPECT_NEAR(dist.variance_x(), 0.5 + 0.5, 1e-9);
    EXPECT_NEAR(dist.variance_p(), 0.5 + 0.5, 1e-9);
}

TEST(Grid, region_mass) {
    const auto dist = outcome_distribution(default_state());
    EXPECT_NEAR(region_mass(dist, {-10.0, 10.0, -10.0, 10.0}), 1.0, 1e-12);
    EXPECT_DOUBLE_EQ(region_mass(dist, {1.0, 1.0, -1.0, 1.0}), 0.0);
    const double left = region_mass(dist, {-10.0, 0.3, -10.0, 10.0});
    const double right = region_mass(dist, {0.3, 10.0, -10.0, 10.0});
    EXPECT_NEAR(left + right, 1.0, 1e-12);
    EXPECT_THROW(region_mass(dist, {-11.0, 0.0, -1.0, 1.0}), DomainError);
    EXPECT_THROW(region_mass(dist, {1.0, 0.0, -1.0, 1.0}), DomainError);
}

TEST(Grid, sampling_is_deterministic_and_consistent) {
    const auto dist = outcome_distribution(default_state());
    const auto a = sample_outcomes(dist, 20000, 42);
    const auto b = sample_outcomes(dist, 20000, 42);
    const auto c = sample_outcomes(dist, 20000, 43);
    EXPECT_EQ(a, b);
    EXPECT_NE(a, c);
    double sx = 0.0, sp = 0.0;
    for (const auto &[x, p] : a) {
        sx += x;
        sp += p;
    }
    const double n = static_cast<double>(a.size());
    const double se = std::sqrt(1.0 / n);
    EXPECT_NEAR(sx / n, dist.mean_x(), 5 * se);
    EXPECT_NEAR(sp / n, dist.mean_p(), 5 * se);
    EXPECT_THROW(sample_outcomes(dist, 0, 1), DomainError);
}

TEST(Grid, distribution_csv) {
    const auto dist = outcome_distribution(init_product_gaussian(make_axes(32, 12.0), 0.0, 0.0, 0.7, 1.0, 1.0));
    std::ostringstream out;
    write_distribution_csv(out, dist);
    const std::string text = out.str();
    EXPECT_EQ(text.rfind("muX,muP,weight\n", 0), 0u);
    EXPECT_EQ(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')), 1u + 32u * 32u);
}

TEST(Grid, thread_count_does_not_change_results) {
    const GridState s = default_state();
    setenv("AKMETER_THREADS", "1", 1);
    const auto one = apply_U(s);
    setenv("AKMETER_THREADS", "3", 1);
    const auto three = apply_U(s);
    unsetenv("AKMETER_THREADS");
    EXPECT_EQ(one.amplitudes(), three.amplitudes());
}
