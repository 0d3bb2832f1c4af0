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

#include "akmeter/scenario.hpp"

#include <cmath>
#include <string>

#include <gtest/gtest.h>

#include "akmeter/errors.hpp"

using namespace akmeter;

namespace {

std::string error_of(const std::string &text) {
    try {
        parse_scenario(text);
    } catch (const ConfigError &e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST(Scenario, defaults) {
    const Scenario s = parse_scenario("");
    EXPECT_EQ(s.hbar, 1.0);
    EXPECT_EQ(s.lambda, 1.0);
    EXPECT_EQ(s.coupling, 1.0);
    EXPECT_EQ(s.backend, BackendChoice::gaussian);
    EXPECT_EQ(s.system_kind, SystemKind::gaussian);
    EXPECT_DOUBLE_EQ(s.system_width(), std::sqrt(0.5));
    EXPECT_EQ(s.grid.n[0], 64u);
    EXPECT_EQ(s.grid.length[2], 20.0);
    EXPECT_EQ(s.system_packets().size(), 1u);
}

TEST(Scenario, reads_every_key) {
    const Scenario s = parse_scenario(R"(
# comment line
hbar = 2          # trailing comment
lambda = 0.5
coupling = 1.5
seed = 99
backend = both
system.mean_x = -1.25
system.mean_p = 3
system.width = 0.4
grid.n = 32
grid.length = 12
grid.meter_p.n = 128
grid.meter_x.length = auto
superposition.region_fraction = 0.25
)");
    EXPECT_EQ(s.hbar, 2.0);
    EXPECT_EQ(s.lambda, 0.5);
    EXPECT_EQ(s.coupling, 1.5);
    EXPECT_EQ(s.seed, 99u);
    EXPECT_EQ(s.backend, BackendChoice::both);
    EXPECT_EQ(s.mean_x, -1.25);
    EXPECT_EQ(s.mean_p, 3.0);
    EXPECT_EQ(s.system_width(), 0.4);
    EXPECT_EQ(s.grid.n[0], 32u);
    EXPECT_EQ(s.grid.n[2], 128u);
    EXPECT_EQ(s.grid.length[0], 12.0);
    EXPECT_TRUE(s.grid.auto_length[1]);
    EXPECT_FALSE(s.grid.auto_length[0]);
    EXPECT_EQ(s.region_fraction, 0.25);
}

TEST(Scenario, packets) {
    const Scenario s = parse_scenario(R"(
system.kind = superposition
system.width = 0.5
packet.1.coefficient = 0.6
packet.1.mean_x = -3
packet.2.coefficient = 0.8
packet.2.phase = 1.5707963267948966
packet.2.mean_x = 3
packet.2.width = 0.25
)");
    EXPECT_EQ(s.backend, BackendChoice::grid);
    ASSERT_EQ(s.packets.size(), 2u);
    EXPECT_EQ(s.packets[0].width, 0.5);
    EXPECT_EQ(s.packets[1].width, 0.25);
    EXPECT_NEAR(s.packets[1].coefficient.imag(), 0.8, 1e-15);
    EXPECT_NEAR(s.packets[1].coefficient.real(), 0.0, 1e-15);
    EXPECT_EQ(s.system_packets().size(), 2u);
}

TEST(Scenario, diagnostics_name_line_and_field) {
    EXPECT_EQ(error_of("hbar = 1\nlambda = -2\n"), "line 2: field 'lambda': must be positive, got -2");
    EXPECT_EQ(error_of("lambda = abc"), "line 1: field 'lambda': 'abc' is not a number");
    EXPECT_EQ(error_of("\n\nfoo = 1"), "line 3: field 'foo': unknown key");
    EXPECT_EQ(error_of("lambda = 1\nlambda = 2"), "line 2: field 'lambda': duplicate (first set on line 1)");
    EXPECT_EQ(error_of("grid.n = 48"), "line 1: field 'grid.n': must be a power of two between 8 and 4096, got 48");
    EXPECT_EQ(error_of("backend = quantum"), "line 1: field 'backend': expected gaussian, grid or both, got 'quantum'");
    EXPECT_EQ(error_of("lambda"), "line 1: expected 'key = value', got 'lambda'");
    EXPECT_EQ(error_of("lambda ="), "line 1: field 'lambda': missing value");
}

TEST(Scenario, packet_diagnostics) {
    EXPECT_NE(error_of("system.kind = superposition\npacket.2.mean_x = 1").find("packet 1 is missing"),
              std::string::npos);
    EXPECT_NE(error_of("system.kind = superposition\npacket.1.colour = 1").find("unknown packet field"),
              std::string::npos);
    EXPECT_NE(error_of("packet.1.mean_x = 1").find("system.kind = superposition"), std::string::npos);
    EXPECT_NE(error_of("system.kind = superposition").find("at least one packet"), std::string::npos);
    EXPECT_EQ(error_of("system.kind = superposition\nbackend = gaussian\npacket.1.mean_x = 0"),
              "line 2: field 'backend': a superposition is not Gaussian; use backend = grid");
    EXPECT_NE(error_of("system.kind = superposition\npacket.1.coefficient = 0").find("all coefficients are zero"),
              std::string::npos);
}

TEST(Scenario, region_fraction_bounds) {
    EXPECT_NE(error_of("superposition.region_fraction = 0.75").find("must not exceed 0.5"), std::string::npos);
    EXPECT_NE(error_of("superposition.region_fraction = 0").find("must be positive"), std::string::npos);
}

TEST(Scenario, missing_file) {
    EXPECT_THROW(load_scenario("/nonexistent/scenario.cfg"), ConfigError);
}
