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

// Scenario files are flat `key = value` text, one entry per line, `#` starts a
// comment. Recognized keys:
//
//   hbar, lambda, coupling, seed
//   backend                     gaussian | grid | both
//   system.kind                 gaussian | superposition
//   system.mean_x, system.mean_p, system.width
//   packet.N.coefficient, packet.N.phase, packet.N.mean_x, packet.N.mean_p, packet.N.width
//   grid.n, grid.length         all three axes; length may be `auto`
//   grid.<axis>.n, grid.<axis>.length   axis in system | meter_x | meter_p
//   superposition.region_fraction

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

#include "akmeter/grid.hpp"

namespace akmeter {

enum class BackendChoice : uint8_t { gaussian, grid, both };
enum class SystemKind : uint8_t { gaussian, superposition };

struct GridConfig {
    std::array<std::size_t, 3> n = {64, 64, 64};
    std::array<double, 3> length = {20.0, 20.0, 20.0};
    /// Per axis: take the length from suggest_axes instead of `length`.
    std::array<bool, 3> auto_length = {false, false, false};
};

struct Scenario {
    double hbar = 1.0;
    double lambda = 1.0;
    double coupling = 1.0;
    BackendChoice backend = BackendChoice::gaussian;
    SystemKind system_kind = SystemKind::gaussian;
    double mean_x = 0.0;
    double mean_p = 0.0;
    std::optional<double> width;  // defaults to sqrt(hbar / 2)
    std::vector<GaussianPacket> packets;
    GridConfig grid;
    uint64_t seed = 0;
    double region_fraction = 0.5;

    double system_width() const;
    /// The system wavefunction as packets (a single one for system.kind = gaussian).
    std::vector<GaussianPacket> system_packets() const;
};

/// Throws ConfigError naming the line and field.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::filesystem::path &path);

}  // namespace akmeter
