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
#include <numbers>
#include <ostream>
#include <random>

#include <fmt/format.h>

#include "akmeter/csv.hpp"
#include "akmeter/errors.hpp"
#include "akmeter/gaussian.hpp"
#include "akmeter/parallel.hpp"
#include "fft.hpp"

namespace akmeter {

namespace {

using Complex = std::complex<double>;
constexpr double kPi = std::numbers::pi;

// Lines along one axis of the row-major [n0][n1][n2] lattice.
struct LineLayout {
    std::size_t count;
    std::size_t stride;
    std::size_t n1;
    std::size_t n2;
    std::size_t axis;

    std::size_t start(std::size_t line) const {
        switch (axis) {
            case 0:
                return line;
            case 1:
                return (line / n2) * n1 * n2 + line % n2;
            default:
                return line * n2;
        }
    }
};

LineLayout layout_for(const GridAxes &axes, std::size_t axis) {
    const std::size_t n0 = axes[0].n, n1 = axes[1].n, n2 = axes[2].n;
    switch (axis) {
        case 0:
            return {n1 * n2, n1 * n2, n1, n2, 0};
        case 1:
            return {n0 * n2, n2, n1, n2, 1};
        default:
            return {n0 * n1, 1, n1, n2, 2};
    }
}

void transform_axis(GridState &state, std::size_t axis, Representation target) {
    if (state.reps()[axis] == target) {
        return;
    }
    const auto &spec = state.axes()[axis];
    const std::size_t n = spec.n;
    const bool forward = target == Representation::momentum;
    const double hbar = state.hbar();
    const double scale = (forward ? spec.spacing() : spec.conjugate_spacing(hbar)) / std::sqrt(2.0 * kPi * hbar);
    // exp(-+2 pi i (m - n/2)(j - n/2)/n) = (-1)^(j+m) exp(-+2 pi i m j / n) for n divisible by 4.
    const detail::FftPlan plan(n, forward ? -1 : 1);
    const LineLayout lines = layout_for(state.axes(), axis);
    auto &data = state.mutable_amplitudes();

    parallel_for(lines.count, [&](std::size_t begin, std::size_t end) {
        detail::FftBuffer buffer(n);
        for (std::size_t line = begin; line < end; ++line) {
            const std::size_t base = lines.start(line);
            for (std::size_t j = 0; j < n; ++j) {
                const Complex v = data[base + j * lines.stride];
                buffer[j] = (j & 1) ? -v : v;
            }
            plan.execute(buffer);
            for (std::size_t m = 0; m < n; ++m) {
                const Complex v = buffer[m] * scale;
                data[base + m * lines.stride] = (m & 1) ? -v : v;
            }
        }
    });
    state.set_representation(axis, target);
}

void transform_all_to_position(GridState &state) {
    for (std::size_t axis = 0; axis < 3; ++axis) {
        transform_axis(state, axis, Representation::position);
    }
}

std::vector<double> coordinates(const GridState &state, std::size_t axis) {
    const auto &spec = state.axes()[axis];
    std::vector<double> out(spec.n);
    for (std::size_t i = 0; i < spec.n; ++i) {
        out[i] = spec.coordinate(i, state.reps()[axis], state.hbar());
    }
    return out;
}

// psi *= exp(i * factor * q_a * q_b) with q in the current representations (a < b).
void multiply_bilinear_phase(GridState &state, std::size_t a, std::size_t b, double factor) {
    const auto qa = coordinates(state, a);
    const auto qb = coordinates(state, b);
    const std::size_t n0 = state.axes()[0].n, n1 = state.axes()[1].n, n2 = state.axes()[2].n;
    auto &data = state.mutable_amplitudes();
    parallel_for(n0, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i0 = begin; i0 < end; ++i0) {
            for (std::size_t i1 = 0; i1 < n1; ++i1) {
                for (std::size_t i2 = 0; i2 < n2; ++i2) {
                    const std::array<std::size_t, 3> idx = {i0, i1, i2};
                    const double angle = factor * qa[idx[a]] * qb[idx[b]];
                    data[(i0 * n1 + i1) * n2 + i2] *= Complex(std::cos(angle), std::sin(angle));
                }
            }
        }
    });
}

// Marginal probability along one axis in its current representation (sums to 1 for a normalized state).
std::vector<double> marginal(const GridState &state, std::size_t axis) {
    const std::size_t n0 = state.axes()[0].n, n1 = state.axes()[1].n, n2 = state.axes()[2].n;
    std::vector<double> out(state.axes()[axis].n, 0.0);
    const auto &data = state.amplitudes();
    for (std::size_t i0 = 0; i0 < n0; ++i0) {
        for (std::size_t i1 = 0; i1 < n1; ++i1) {
            for (std::size_t i2 = 0; i2 < n2; ++i2) {
                const std::array<std::size_t, 3> idx = {i0, i1, i2};
                out[idx[axis]] += std::norm(data[(i0 * n1 + i1) * n2 + i2]);
            }
        }
    }
    const double vol = state.cell_volume();
    for (auto &v : out) {
        v *= vol;
    }
    return out;
}

std::pair<std::size_t, Representation> diagonal_axis(Generator g) {
    const auto i = index_of(g);
    return {i / 2, i % 2 == 0 ? Representation::position : Representation::momentum};
}

const GridState &in_rep(const GridState &state, std::size_t axis, Representation rep, GridState &scratch) {
    if (state.reps()[axis] == rep) {
        return state;
    }
    scratch = to_representation(state, axis, rep);
    return scratch;
}

// Mean and variance of the coordinate along `axis` in representation `rep`.
std::pair<double, double> axis_moments(const GridState &state, std::size_t axis, Representation rep) {
    GridState scratch = GridState(state.axes(), state.hbar());
    const GridState &s = in_rep(state, axis, rep, scratch);
    const auto prob = marginal(s, axis);
    const auto q = coordinates(s, axis);
    double total = 0.0, first = 0.0;
    for (std::size_t i = 0; i < prob.size(); ++i) {
        total += prob[i];
        first += prob[i] * q[i];
    }
    const double mean = first / total;
    double second = 0.0;
    for (std::size_t i = 0; i < prob.size(); ++i) {
        second += prob[i] * (q[i] - mean) * (q[i] - mean);
    }
    return {mean, second / total};
}

std::array<GaussianState, 2> packet_moments(const GaussianPacket &packet, double lambda, double hbar,
                                            double coupling) {
    const auto init = compose_product(Eigen::Vector2d(packet.mean_x, packet.mean_p),
                                      minimum_uncertainty_cov(packet.width, hbar), ak_apparatus_state(lambda, hbar),
                                      hbar);
    return {init, evolve(init, ak_transfer_matrix(coupling, hbar))};
}

// |mean| + k sigma per generator, maximized over packets and over before/after.
std::array<double, kGeneratorCount> required_extents(std::span<const GaussianPacket> packets, double lambda,
                                                     double hbar, double coupling, double k) {
    std::array<double, kGeneratorCount> out{};
    for (const auto &packet : packets) {
        for (const auto &s : packet_moments(packet, lambda, hbar, coupling)) {
            for (auto g : kAllGenerators) {
                out[index_of(g)] = std::max(out[index_of(g)], std::abs(s.mean(g)) + k * s.stddev(g));
            }
        }
    }
    return out;
}

void validate_packets(std::span<const GaussianPacket> packets) {
    if (packets.empty()) {
        throw DomainError("at least one packet is required");
    }
    for (const auto &packet : packets) {
        if (!(packet.width > 0.0) || !std::isfinite(packet.width)) {
            throw DomainError("packet width must be positive");
        }
        if (!std::isfinite(packet.mean_x) || !std::isfinite(packet.mean_p)) {
            throw DomainError("packet means must be finite");
        }
    }
}

GridState build_state(const GridAxes &axes, std::span<const GaussianPacket> packets, double lambda, double hbar) {
    const auto &sys = axes[0];
    const auto &mx = axes[1];
    const auto &mp = axes[2];

    std::vector<Complex> system(sys.n, 0.0);
    for (const auto &packet : packets) {
        std::vector<Complex> chi(sys.n);
        double norm2 = 0.0;
        const double amplitude = std::pow(2.0 * kPi * packet.width * packet.width, -0.25);
        for (std::size_t i = 0; i < sys.n; ++i) {
            const double x = sys.coordinate(i, Representation::position, hbar);
            const double d = x - packet.mean_x;
            const double envelope = amplitude * std::exp(-d * d / (4.0 * packet.width * packet.width));
            const double phase = packet.mean_p * x / hbar;
            chi[i] = envelope * Complex(std::cos(phase), std::sin(phase));
            norm2 += std::norm(chi[i]);
        }
        const double scale = 1.0 / std::sqrt(norm2 * sys.spacing());
        for (std::size_t i = 0; i < sys.n; ++i) {
            system[i] += packet.coefficient * chi[i] * scale;
        }
    }

    const double prefactor = 2.0 / std::sqrt(2.0 * kPi * hbar);
    std::vector<double> meter_x(mx.n), meter_p(mp.n);
    for (std::size_t i = 0; i < mx.n; ++i) {
        const double mu = mx.coordinate(i, Representation::position, hbar);
        meter_x[i] = std::exp(-mu * mu / (lambda * lambda));
    }
    for (std::size_t i = 0; i < mp.n; ++i) {
        const double mu = mp.coordinate(i, Representation::position, hbar);
        meter_p[i] = std::exp(-lambda * lambda * mu * mu / (hbar * hbar));
    }

    GridState state(axes, hbar);
    auto &data = state.mutable_amplitudes();
    for (std::size_t i0 = 0; i0 < sys.n; ++i0) {
        for (std::size_t i1 = 0; i1 < mx.n; ++i1) {
            for (std::size_t i2 = 0; i2 < mp.n; ++i2) {
                data[state.index(i0, i1, i2)] = prefactor * system[i0] * meter_x[i1] * meter_p[i2];
            }
        }
    }
    const double norm = state.norm();
    if (!(norm > 0.0)) {
        throw DomainError("superposition has zero norm");
    }
    for (auto &v : data) {
        v /= norm;
    }
    return state;
}

double uniform01(std::mt19937_64 &rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

std::string_view axis_label_name(AxisLabel label) {
    switch (label) {
        case AxisLabel::system:
            return "system";
        case AxisLabel::meter_x:
            return "meterX";
        case AxisLabel::meter_p:
            return "meterP";
    }
    return "?";
}

void AxisSpec::validate() const {
    if (n < 8 || (n & (n - 1)) != 0) {
        throw DomainError(fmt::format("{} axis: point count {} must be a power of two >= 8", axis_label_name(label), n));
    }
    if (!(length > 0.0) || !std::isfinite(length)) {
        throw DomainError(fmt::format("{} axis: length must be positive", axis_label_name(label)));
    }
}

double AxisSpec::conjugate_spacing(double hbar) const { return 2.0 * kPi * hbar / length; }

double AxisSpec::cell(Representation rep, double hbar) const {
    return rep == Representation::position ? spacing() : conjugate_spacing(hbar);
}

double AxisSpec::coordinate(std::size_t i, Representation rep, double hbar) const {
    return (static_cast<double>(i) - static_cast<double>(n / 2)) * cell(rep, hbar);
}

double AxisSpec::half_range(Representation rep, double hbar) const {
    return 0.5 * static_cast<double>(n) * cell(rep, hbar);
}

GridAxes make_axes(std::size_t n, double length) { return make_axes({n, n, n}, {length, length, length}); }

GridAxes make_axes(const std::array<std::size_t, 3> &n, const std::array<double, 3> &length) {
    return {AxisSpec{n[0], length[0], AxisLabel::system}, AxisSpec{n[1], length[1], AxisLabel::meter_x},
            AxisSpec{n[2], length[2], AxisLabel::meter_p}};
}

double packet_overlap(const GaussianPacket &a, const GaussianPacket &b, double hbar) {
    const double sa2 = a.width * a.width;
    const double sb2 = b.width * b.width;
    const double sum = sa2 + sb2;
    const double dx = a.mean_x - b.mean_x;
    const double dp = a.mean_p - b.mean_p;
    return std::sqrt(2.0 * a.width * b.width / sum) *
           std::exp(-dx * dx / (4.0 * sum) - dp * dp * sa2 * sb2 / (hbar * hbar * sum));
}

GridState::GridState(const GridAxes &axes, double hbar)
    : GridState(axes, {Representation::position, Representation::position, Representation::position},
                std::vector<Complex>(axes[0].n * axes[1].n * axes[2].n, 0.0), hbar) {}

GridState::GridState(const GridAxes &axes, const Representations &reps, std::vector<Complex> amplitudes,
                     double hbar)
    : axes_(axes), reps_(reps), amplitudes_(std::move(amplitudes)), hbar_(hbar) {
    for (const auto &a : axes_) {
        a.validate();
    }
    if (!(hbar > 0.0) || !std::isfinite(hbar)) {
        throw DomainError("hbar must be positive");
    }
    if (amplitudes_.size() != axes_[0].n * axes_[1].n * axes_[2].n) {
        throw DimensionError("amplitude count does not match the axes");
    }
}

double GridState::cell_volume() const {
    double v = 1.0;
    for (std::size_t a = 0; a < 3; ++a) {
        v *= axes_[a].cell(reps_[a], hbar_);
    }
    return v;
}

double GridState::norm_squared() const {
    double total = 0.0;
    for (const auto &v : amplitudes_) {
        total += std::norm(v);
    }
    return total * cell_volume();
}

double GridState::norm() const { return std::sqrt(norm_squared()); }

double GridState::mean(Generator g) const {
    const auto [axis, rep] = diagonal_axis(g);
    return axis_moments(*this, axis, rep).first;
}

double GridState::variance(Generator g) const {
    const auto [axis, rep] = diagonal_axis(g);
    return axis_moments(*this, axis, rep).second;
}

GridState to_representation(const GridState &state, std::size_t axis, Representation target) {
    if (axis >= 3) {
        throw DimensionError("axis index must be 0, 1 or 2");
    }
    GridState out = state;
    transform_axis(out, axis, target);
    return out;
}

GridState to_position(const GridState &state) {
    GridState out = state;
    transform_all_to_position(out);
    return out;
}

GridState multiply_by(const GridState &state, Generator g) {
    const auto [axis, rep] = diagonal_axis(g);
    GridState out = to_representation(state, axis, rep);
    const auto q = coordinates(out, axis);
    const std::size_t n0 = out.axes()[0].n, n1 = out.axes()[1].n, n2 = out.axes()[2].n;
    auto &data = out.mutable_amplitudes();
    for (std::size_t i0 = 0; i0 < n0; ++i0) {
        for (std::size_t i1 = 0; i1 < n1; ++i1) {
            for (std::size_t i2 = 0; i2 < n2; ++i2) {
                const std::array<std::size_t, 3> idx = {i0, i1, i2};
                data[(i0 * n1 + i1) * n2 + i2] *= q[idx[axis]];
            }
        }
    }
    return out;
}

double distance(const GridState &a, const GridState &b) {
    if (a.axes() != b.axes()) {
        throw DimensionError("states live on different lattices");
    }
    const GridState pa = to_position(a);
    const GridState pb = to_position(b);
    double total = 0.0;
    for (std::size_t i = 0; i < pa.size(); ++i) {
        total += std::norm(pa.amplitudes()[i] - pb.amplitudes()[i]);
    }
    return std::sqrt(total * pa.cell_volume());
}

GridState apply_U(const GridState &state, double coupling) {
    const double hbar = state.hbar();
    const double g = coupling;
    GridState s = state;
    // exp(C): both meters in momentum representation.
    transform_axis(s, 1, Representation::momentum);
    transform_axis(s, 2, Representation::momentum);
    multiply_bilinear_phase(s, 1, 2, -g * g / (2.0 * hbar));
    // exp(B): x and piX.
    transform_axis(s, 0, Representation::position);
    multiply_bilinear_phase(s, 0, 1, -g / hbar);
    // exp(A): p and piP.
    transform_axis(s, 0, Representation::momentum);
    multiply_bilinear_phase(s, 0, 2, -g / hbar);
    transform_all_to_position(s);
    return s;
}

GridState apply_U_dagger(const GridState &state, double coupling) {
    const double hbar = state.hbar();
    const double g = coupling;
    GridState s = state;
    transform_axis(s, 0, Representation::momentum);
    transform_axis(s, 2, Representation::momentum);
    multiply_bilinear_phase(s, 0, 2, g / hbar);
    transform_axis(s, 0, Representation::position);
    transform_axis(s, 1, Representation::momentum);
    multiply_bilinear_phase(s, 0, 1, g / hbar);
    multiply_bilinear_phase(s, 1, 2, g * g / (2.0 * hbar));
    transform_all_to_position(s);
    return s;
}

void check_resolution(const GridAxes &axes, std::span<const GaussianPacket> packets, double lambda, double hbar,
                      double coupling) {
    for (const auto &a : axes) {
        a.validate();
    }
    validate_packets(packets);
    const auto extents = required_extents(packets, lambda, hbar, coupling, 4.0);
    for (std::size_t axis = 0; axis < 3; ++axis) {
        for (auto rep : {Representation::position, Representation::momentum}) {
            const auto g = kAllGenerators[2 * axis + (rep == Representation::momentum ? 1 : 0)];
            const double need = extents[index_of(g)];
            const double have = axes[axis].half_range(rep, hbar);
            if (need > have) {
                throw ResolutionError(fmt::format(
                    "{} axis: {} needs |mean| + 4 sigma = {:.4g} but the lattice holds only +-{:.4g} "
                    "(n = {}, length = {:.4g})",
                    axis_label_name(axes[axis].label), generator_name(g), need, have, axes[axis].n,
                    axes[axis].length));
            }
        }
    }
}

GridAxes suggest_axes(std::size_t n, std::span<const GaussianPacket> packets, double lambda, double hbar,
                      double coupling) {
    validate_packets(packets);
    const auto extents = required_extents(packets, lambda, hbar, coupling, 8.0);
    std::array<double, 3> lengths{};
    for (std::size_t axis = 0; axis < 3; ++axis) {
        const double position = extents[2 * axis];
        const double momentum = extents[2 * axis + 1];
        const double max_length = kPi * hbar * static_cast<double>(n) / momentum;
        lengths[axis] = 2.0 * position <= max_length ? 2.0 * position : std::sqrt(2.0 * position * max_length);
    }
    return make_axes({n, n, n}, lengths);
}

GridState init_product_gaussian(const GridAxes &axes, double mean_x, double mean_p, double width, double lambda,
                                double hbar, double coupling) {
    const std::array<GaussianPacket, 1> packet = {GaussianPacket{1.0, mean_x, mean_p, width}};
    return init_superposition(axes, packet, lambda, hbar, coupling);
}

GridState init_superposition(const GridAxes &axes, std::span<const GaussianPacket> packets, double lambda,
                             double hbar, double coupling, std::vector<std::string> *warnings) {
    check_resolution(axes, packets, lambda, hbar, coupling);
    if (warnings != nullptr) {
        for (std::size_t a = 0; a < packets.size(); ++a) {
            for (std::size_t b = a + 1; b < packets.size(); ++b) {
                const double overlap = packet_overlap(packets[a], packets[b], hbar);
                if (overlap > kOverlapWarningThreshold) {
                    warnings->push_back(fmt::format("packets {} and {} overlap: |<chi|chi'>| = {:.3e}", a + 1,
                                                    b + 1, overlap));
                }
            }
        }
    }
    return build_state(axes, packets, lambda, hbar);
}

GridMeasurement measure(const GridState &initial, double coupling) {
    const GridState psi = to_position(initial);
    const GridState u = apply_U(psi, coupling);
    const GridState x_psi = multiply_by(psi, Generator::x);
    const GridState p_psi = multiply_by(psi, Generator::p);
    const GridState mux_u = multiply_by(u, Generator::muX);
    const GridState mup_u = multiply_by(u, Generator::muP);
    const GridState x_u = multiply_by(u, Generator::x);
    const GridState p_u = multiply_by(u, Generator::p);

    GridMeasurement m;
    auto &rms = m.rms;
    rms[static_cast<std::size_t>(ErrorKind::eXi)] = distance(apply_U_dagger(mux_u, coupling), x_psi);
    rms[static_cast<std::size_t>(ErrorKind::ePi)] = distance(apply_U_dagger(mup_u, coupling), p_psi);
    // U^dagger (muX - x) U: the outer U^dagger does not change the norm.
    rms[static_cast<std::size_t>(ErrorKind::eXf)] = distance(mux_u, x_u);
    rms[static_cast<std::size_t>(ErrorKind::ePf)] = distance(mup_u, p_u);
    rms[static_cast<std::size_t>(ErrorKind::dX)] = distance(apply_U_dagger(x_u, coupling), x_psi);
    rms[static_cast<std::size_t>(ErrorKind::dP)] = distance(apply_U_dagger(p_u, coupling), p_psi);

    auto moments = [](const GridState &s, Generator g, double &mean, double &sd) {
        const auto [axis, rep] = diagonal_axis(g);
        const auto [mu, var] = axis_moments(s, axis, rep);
        mean = mu;
        sd = std::sqrt(std::max(0.0, var));
    };
    moments(psi, Generator::x, m.mean_x_i, m.sd_x_i);
    moments(psi, Generator::p, m.mean_p_i, m.sd_p_i);
    moments(u, Generator::muX, m.mean_mu_x_f, m.sd_mu_x_f);
    moments(u, Generator::muP, m.mean_mu_p_f, m.sd_mu_p_f);
    moments(u, Generator::x, m.mean_x_f, m.sd_x_f);
    moments(u, Generator::p, m.mean_p_f, m.sd_p_f);
    return m;
}

double rms_error(const GridState &initial, ErrorKind kind, double coupling) {
    const GridState psi = to_position(initial);
    const GridState u = apply_U(psi, coupling);
    switch (kind) {
        case ErrorKind::eXi:
            return distance(apply_U_dagger(multiply_by(u, Generator::muX), coupling), multiply_by(psi, Generator::x));
        case ErrorKind::ePi:
            return distance(apply_U_dagger(multiply_by(u, Generator::muP), coupling), multiply_by(psi, Generator::p));
        case ErrorKind::eXf:
            return distance(multiply_by(u, Generator::muX), multiply_by(u, Generator::x));
        case ErrorKind::ePf:
            return distance(multiply_by(u, Generator::muP), multiply_by(u, Generator::p));
        case ErrorKind::dX:
            return distance(apply_U_dagger(multiply_by(u, Generator::x), coupling), multiply_by(psi, Generator::x));
        case ErrorKind::dP:
            return distance(apply_U_dagger(multiply_by(u, Generator::p), coupling), multiply_by(psi, Generator::p));
    }
    return 0.0;
}

double OutcomeDistribution::mu_x(std::size_t ix) const {
    return axis_x.coordinate(ix, Representation::position, 1.0);
}

double OutcomeDistribution::mu_p(std::size_t ip) const {
    return axis_p.coordinate(ip, Representation::position, 1.0);
}

double OutcomeDistribution::total_mass() const {
    double total = 0.0;
    for (double w : weights) {
        total += w;
    }
    return total * cell_area();
}

double OutcomeDistribution::mean_x() const {
    double total = 0.0;
    for (std::size_t ix = 0; ix < axis_x.n; ++ix) {
        for (std::size_t ip = 0; ip < axis_p.n; ++ip) {
            total += mu_x(ix) * weight(ix, ip);
        }
    }
    return total * cell_area();
}

double OutcomeDistribution::mean_p() const {
    double total = 0.0;
    for (std::size_t ix = 0; ix < axis_x.n; ++ix) {
        for (std::size_t ip = 0; ip < axis_p.n; ++ip) {
            total += mu_p(ip) * weight(ix, ip);
        }
    }
    return total * cell_area();
}

double OutcomeDistribution::variance_x() const {
    const double m = mean_x();
    double total = 0.0;
    for (std::size_t ix = 0; ix < axis_x.n; ++ix) {
        for (std::size_t ip = 0; ip < axis_p.n; ++ip) {
            total += (mu_x(ix) - m) * (mu_x(ix) - m) * weight(ix, ip);
        }
    }
    return total * cell_area();
}

double OutcomeDistribution::variance_p() const {
    const double m = mean_p();
    double total = 0.0;
    for (std::size_t ix = 0; ix < axis_x.n; ++ix) {
        for (std::size_t ip = 0; ip < axis_p.n; ++ip) {
            total += (mu_p(ip) - m) * (mu_p(ip) - m) * weight(ix, ip);
        }
    }
    return total * cell_area();
}

OutcomeDistribution outcome_distribution(const GridState &initial, double coupling) {
    const GridState u = apply_U(to_position(initial), coupling);
    const auto &axes = u.axes();
    const std::size_t n0 = axes[0].n, n1 = axes[1].n, n2 = axes[2].n;
    OutcomeDistribution dist{axes[1], axes[2], std::vector<double>(n1 * n2, 0.0)};
    const auto &data = u.amplitudes();
    const double dx = axes[0].spacing();
    parallel_for(n1, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i1 = begin; i1 < end; ++i1) {
            for (std::size_t i2 = 0; i2 < n2; ++i2) {
                double total = 0.0;
                for (std::size_t i0 = 0; i0 < n0; ++i0) {
                    total += std::norm(data[(i0 * n1 + i1) * n2 + i2]);
                }
                dist.weights[i1 * n2 + i2] = total * dx;
            }
        }
    });
    return dist;
}

double region_mass(const OutcomeDistribution &dist, const Rectangle &rect) {
    auto check = [](const AxisSpec &axis, double lo, double hi, const char *name) {
        const double half = 0.5 * axis.length;
        const double slack = 1e-12 * axis.length;
        if (!(lo <= hi)) {
            throw DomainError(fmt::format("{} range [{}, {}) is inverted", name, lo, hi));
        }
        if (lo < -half - slack || hi > half + slack) {
            throw DomainError(fmt::format("{} range [{}, {}) leaves the lattice [-{}, {}]", name, lo, hi, half, half));
        }
    };
    check(dist.axis_x, rect.x_lo, rect.x_hi, "muX");
    check(dist.axis_p, rect.p_lo, rect.p_hi, "muP");
    double total = 0.0;
    for (std::size_t ix = 0; ix < dist.axis_x.n; ++ix) {
        const double x = dist.mu_x(ix);
        if (x < rect.x_lo || x >= rect.x_hi) {
            continue;
        }
        for (std::size_t ip = 0; ip < dist.axis_p.n; ++ip) {
            const double p = dist.mu_p(ip);
            if (p >= rect.p_lo && p < rect.p_hi) {
                total += dist.weight(ix, ip);
            }
        }
    }
    return total * dist.cell_area();
}

std::vector<std::pair<double, double>> sample_outcomes(const OutcomeDistribution &dist, std::size_t count,
                                                       uint64_t seed) {
    if (count < 1) {
        throw DomainError("sample count must be at least 1");
    }
    std::vector<double> cdf(dist.weights.size());
    double running = 0.0;
    for (std::size_t i = 0; i < cdf.size(); ++i) {
        running += std::max(0.0, dist.weights[i]);
        cdf[i] = running;
    }
    if (!(running > 0.0)) {
        throw DomainError("outcome distribution has no mass");
    }
    std::mt19937_64 rng(seed);
    std::vector<std::pair<double, double>> out;
    out.reserve(count);
    const double dx = dist.axis_x.spacing();
    const double dp = dist.axis_p.spacing();
    for (std::size_t s = 0; s < count; ++s) {
        const double u = uniform01(rng) * running;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        std::size_t flat = std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);
        const std::size_t ix = flat / dist.axis_p.n;
        const std::size_t ip = flat % dist.axis_p.n;
        const double jx = uniform01(rng) - 0.5;
        const double jp = uniform01(rng) - 0.5;
        out.emplace_back(dist.mu_x(ix) + jx * dx, dist.mu_p(ip) + jp * dp);
    }
    return out;
}

void write_distribution_csv(std::ostream &out, const OutcomeDistribution &dist) {
    out << "muX,muP,weight\n";
    for (std::size_t ix = 0; ix < dist.axis_x.n; ++ix) {
        for (std::size_t ip = 0; ip < dist.axis_p.n; ++ip) {
            out << format_double(dist.mu_x(ix)) << ',' << format_double(dist.mu_p(ip)) << ','
                << format_double(dist.weight(ix, ip)) << '\n';
        }
    }
}

}  // namespace akmeter
