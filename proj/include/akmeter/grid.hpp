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

// Lattice wavefunction backend for one system degree of freedom and two meters.
//
// Conventions (one set, used everywhere):
//   * position grid  q_j = (j - n/2) * dq,          dq = L / n,          j = 0..n-1
//   * momentum grid  k_m = (m - n/2) * dk,          dk = 2 pi hbar / L
//   * forward transform
//       phi_m = dq / sqrt(2 pi hbar) * sum_j psi_j exp(-i k_m q_j / hbar)
//     which is unitary with respect to the cell measures dq and dk.
//   * amplitudes are stored row-major as [system][meterX][meterP].

#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "akmeter/ccr.hpp"

namespace akmeter {

enum class AxisLabel : uint8_t { system = 0, meter_x = 1, meter_p = 2 };
enum class Representation : uint8_t { position, momentum };

std::string_view axis_label_name(AxisLabel label);

struct AxisSpec {
    std::size_t n = 64;
    double length = 20.0;
    AxisLabel label = AxisLabel::system;

    /// Throws DomainError unless n is a power of two >= 8 and length > 0.
    void validate() const;
    double spacing() const { return length / static_cast<double>(n); }
    double conjugate_spacing(double hbar) const;
    /// Coordinate of grid index i in the given representation.
    double coordinate(std::size_t i, Representation rep, double hbar) const;
    /// Cell width in the given representation.
    double cell(Representation rep, double hbar) const;
    /// n * cell / 2: the largest |coordinate| the lattice holds.
    double half_range(Representation rep, double hbar) const;

    bool operator==(const AxisSpec &other) const = default;
};

using GridAxes = std::array<AxisSpec, 3>;
using Representations = std::array<Representation, 3>;

/// Three axes labelled system, meterX, meterP.
GridAxes make_axes(std::size_t n, double length);
GridAxes make_axes(const std::array<std::size_t, 3> &n, const std::array<double, 3> &length);

/// A normalized minimum-uncertainty packet with position spread `width`:
/// (2 pi width^2)^(-1/4) exp(-(x - mean_x)^2 / (4 width^2) + i mean_p x / hbar).
struct GaussianPacket {
    std::complex<double> coefficient = 1.0;
    double mean_x = 0.0;
    double mean_p = 0.0;
    double width = 1.0;
};

/// |<chi_a|chi_b>| for two packets (coefficients ignored).
double packet_overlap(const GaussianPacket &a, const GaussianPacket &b, double hbar);

class GridState {
  public:
    /// Zero amplitudes, every axis in position representation.
    GridState(const GridAxes &axes, double hbar);
    GridState(const GridAxes &axes, const Representations &reps, std::vector<std::complex<double>> amplitudes,
              double hbar);

    const GridAxes &axes() const { return axes_; }
    const Representations &reps() const { return reps_; }
    const std::vector<std::complex<double>> &amplitudes() const { return amplitudes_; }
    std::vector<std::complex<double>> &mutable_amplitudes() { return amplitudes_; }
    double hbar() const { return hbar_; }
    std::size_t size() const { return amplitudes_.size(); }
    std::size_t index(std::size_t i0, std::size_t i1, std::size_t i2) const {
        return (i0 * axes_[1].n + i1) * axes_[2].n + i2;
    }

    /// Product of the per-axis cell widths in the current representations.
    double cell_volume() const;
    double norm_squared() const;
    double norm() const;

    /// Expectation and variance of a generator, evaluated in its diagonal representation.
    double mean(Generator g) const;
    double variance(Generator g) const;

    void set_representation(std::size_t axis, Representation rep) { reps_[axis] = rep; }

  private:
    GridAxes axes_;
    Representations reps_;
    std::vector<std::complex<double>> amplitudes_;
    double hbar_;
};

/// Unitary change of representation along one axis.
GridState to_representation(const GridState &state, std::size_t axis, Representation target);
GridState to_position(const GridState &state);

/// Multiplies by a canonical generator in its diagonal representation
/// (the other axes keep their representation).
GridState multiply_by(const GridState &state, Generator g);

/// ||a - b|| after bringing both to position representation.
double distance(const GridState &a, const GridState &b);

/// U = exp(-(i g / hbar)(piP p + piX x)), applied as exp(A) exp(B) exp(C) with
/// A = -(i g/hbar) piP p, B = -(i g/hbar) piX x and C = -[A, B]/2 = -(i g^2 / (2 hbar)) piP piX.
/// [A, B] commutes with A and B, so the factorization is exact; each factor is a pure
/// phase in a suitable mixed representation. Result is in position representation.
GridState apply_U(const GridState &state, double coupling = 1.0);
GridState apply_U_dagger(const GridState &state, double coupling = 1.0);

/// Throws ResolutionError unless every packet, the apparatus state, and the
/// evolved state keep |mean| + 4 sigma inside the lattice in both representations
/// on every axis.
void check_resolution(const GridAxes &axes, std::span<const GaussianPacket> packets, double lambda, double hbar,
                      double coupling = 1.0);

/// Per-axis lengths holding |mean| + 8 sigma of the initial and evolved states in
/// position space; when the n-point conjugate grid cannot also hold 8 sigma, the
/// length is the geometric compromise between the two requirements.
GridAxes suggest_axes(std::size_t n, std::span<const GaussianPacket> packets, double lambda, double hbar,
                      double coupling = 1.0);

/// Normalized product of a system packet and the meter state
/// (2/sqrt(h)) exp(-muX^2/lambda^2 - lambda^2 muP^2/hbar^2), h = 2 pi hbar.
GridState init_product_gaussian(const GridAxes &axes, double mean_x, double mean_p, double width, double lambda,
                                double hbar, double coupling = 1.0);

/// Normalized sum_n c_n chi_n tensored with the meter state. Packet pairs whose
/// overlap exceeds 1e-3 are reported through `warnings` (not an error).
GridState init_superposition(const GridAxes &axes, std::span<const GaussianPacket> packets, double lambda,
                             double hbar, double coupling = 1.0, std::vector<std::string> *warnings = nullptr);

inline constexpr double kOverlapWarningThreshold = 1e-3;

/// ||(A - B)|Psi>|| where A - B is the Heisenberg error or disturbance operator,
/// e.g. eXi: A|Psi> = U^dagger muX U |Psi>, B|Psi> = x |Psi>.
double rms_error(const GridState &initial, ErrorKind kind, double coupling = 1.0);

/// Everything the report needs from one evolution.
struct GridMeasurement {
    std::array<double, 6> rms{};  // indexed by ErrorKind
    double mean_x_i = 0, mean_p_i = 0, sd_x_i = 0, sd_p_i = 0;
    double mean_mu_x_f = 0, mean_mu_p_f = 0, sd_mu_x_f = 0, sd_mu_p_f = 0;
    double mean_x_f = 0, mean_p_f = 0, sd_x_f = 0, sd_p_f = 0;
};

GridMeasurement measure(const GridState &initial, double coupling = 1.0);

/// rho(muX, muP) on the meter lattice; weights are densities, row-major (muX outer).
struct OutcomeDistribution {
    AxisSpec axis_x;
    AxisSpec axis_p;
    std::vector<double> weights;

    double cell_area() const { return axis_x.spacing() * axis_p.spacing(); }
    double weight(std::size_t ix, std::size_t ip) const { return weights[ix * axis_p.n + ip]; }
    double mu_x(std::size_t ix) const;
    double mu_p(std::size_t ip) const;
    double total_mass() const;
    double mean_x() const;
    double mean_p() const;
    double variance_x() const;
    double variance_p() const;
};

OutcomeDistribution outcome_distribution(const GridState &initial, double coupling = 1.0);

struct Rectangle {
    double x_lo, x_hi, p_lo, p_hi;
};

/// Mass of the cells whose centers lie in [x_lo, x_hi) x [p_lo, p_hi).
/// Throws DomainError if the rectangle leaves [-L/2, L/2] on either axis or is inverted.
double region_mass(const OutcomeDistribution &dist, const Rectangle &rect);

/// Inverse-CDF draws over the flattened lattice with uniform jitter inside the cell.
/// Deterministic for a given seed.
std::vector<std::pair<double, double>> sample_outcomes(const OutcomeDistribution &dist, std::size_t count,
                                                       uint64_t seed);

/// Header muX,muP,weight; rows muX-major; 17 significant digits.
void write_distribution_csv(std::ostream &out, const OutcomeDistribution &dist);

}  // namespace akmeter
