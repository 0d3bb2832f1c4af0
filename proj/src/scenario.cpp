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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "akmeter/errors.hpp"

namespace akmeter {

namespace {

std::string_view trim(std::string_view s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string_view::npos) {
        return {};
    }
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

[[noreturn]] void fail(std::size_t line, std::string_view key, std::string_view message) {
    if (line == 0) {
        throw ConfigError(fmt::format("field '{}': {}", key, message));
    }
    throw ConfigError(fmt::format("line {}: field '{}': {}", line, key, message));
}

struct Entry {
    std::string value;
    std::size_t line;
};

struct PacketEntries {
    std::map<std::string, Entry> fields;
    std::size_t first_line = 0;
};

double parse_real(const std::string &key, const Entry &entry) {
    double value = 0.0;
    const char *begin = entry.value.data();
    const char *end = begin + entry.value.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) {
        fail(entry.line, key, fmt::format("'{}' is not a number", entry.value));
    }
    if (!std::isfinite(value)) {
        fail(entry.line, key, "value must be finite");
    }
    return value;
}

double parse_positive(const std::string &key, const Entry &entry) {
    const double value = parse_real(key, entry);
    if (!(value > 0.0)) {
        fail(entry.line, key, fmt::format("must be positive, got {}", entry.value));
    }
    return value;
}

uint64_t parse_unsigned(const std::string &key, const Entry &entry) {
    uint64_t value = 0;
    const char *begin = entry.value.data();
    const char *end = begin + entry.value.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) {
        fail(entry.line, key, fmt::format("'{}' is not a non-negative integer", entry.value));
    }
    return value;
}

std::size_t parse_points(const std::string &key, const Entry &entry) {
    const uint64_t n = parse_unsigned(key, entry);
    if (n < 8 || (n & (n - 1)) != 0 || n > (uint64_t{1} << 12)) {
        fail(entry.line, key, fmt::format("must be a power of two between 8 and 4096, got {}", entry.value));
    }
    return static_cast<std::size_t>(n);
}

constexpr std::array<std::string_view, 3> kAxisKeys = {"system", "meter_x", "meter_p"};

}  // namespace

double Scenario::system_width() const { return width.value_or(std::sqrt(hbar / 2.0)); }

std::vector<GaussianPacket> Scenario::system_packets() const {
    if (system_kind == SystemKind::gaussian) {
        return {GaussianPacket{1.0, mean_x, mean_p, system_width()}};
    }
    return packets;
}

Scenario parse_scenario(std::string_view text) {
    std::map<std::string, Entry> entries;
    std::map<uint64_t, PacketEntries> packet_entries;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto newline = text.find('\n', pos);
        std::string_view line = text.substr(pos, newline == std::string_view::npos ? text.size() - pos : newline - pos);
        pos = newline == std::string_view::npos ? text.size() + 1 : newline + 1;
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(fmt::format("line {}: expected 'key = value', got '{}'", line_no, line));
        }
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (key.empty()) {
            throw ConfigError(fmt::format("line {}: missing key before '='", line_no));
        }
        if (value.empty()) {
            fail(line_no, key, "missing value");
        }

        if (key.rfind("packet.", 0) == 0) {
            const auto dot = key.find('.', 7);
            if (dot == std::string::npos) {
                fail(line_no, key, "expected packet.<N>.<field>");
            }
            const std::string index_text = key.substr(7, dot - 7);
            const std::string field = key.substr(dot + 1);
            const uint64_t index = parse_unsigned(key, Entry{index_text, line_no});
            if (index < 1) {
                fail(line_no, key, "packet numbers start at 1");
            }
            static const std::array<std::string_view, 5> fields = {"coefficient", "phase", "mean_x", "mean_p",
                                                                   "width"};
            if (std::find(fields.begin(), fields.end(), field) == fields.end()) {
                fail(line_no, key, "unknown packet field");
            }
            auto &packet = packet_entries[index];
            if (packet.fields.count(field) != 0) {
                fail(line_no, key, fmt::format("duplicate (first set on line {})", packet.fields.at(field).line));
            }
            if (packet.first_line == 0) {
                packet.first_line = line_no;
            }
            packet.fields[field] = Entry{value, line_no};
            continue;
        }
        if (entries.count(key) != 0) {
            fail(line_no, key, fmt::format("duplicate (first set on line {})", entries.at(key).line));
        }
        entries[key] = Entry{value, line_no};
    }

    Scenario s;
    std::map<std::string, bool> known;
    auto take = [&](const std::string &key) -> const Entry * {
        known[key] = true;
        auto it = entries.find(key);
        return it == entries.end() ? nullptr : &it->second;
    };

    if (const auto *e = take("hbar")) {
        s.hbar = parse_positive("hbar", *e);
    }
    if (const auto *e = take("lambda")) {
        s.lambda = parse_positive("lambda", *e);
    }
    if (const auto *e = take("coupling")) {
        s.coupling = parse_real("coupling", *e);
    }
    if (const auto *e = take("seed")) {
        s.seed = parse_unsigned("seed", *e);
    }
    const Entry *backend_entry = take("backend");
    if (backend_entry != nullptr) {
        const auto &v = backend_entry->value;
        if (v == "gaussian") {
            s.backend = BackendChoice::gaussian;
        } else if (v == "grid") {
            s.backend = BackendChoice::grid;
        } else if (v == "both") {
            s.backend = BackendChoice::both;
        } else {
            fail(backend_entry->line, "backend", fmt::format("expected gaussian, grid or both, got '{}'", v));
        }
    }
    if (const auto *e = take("system.kind")) {
        if (e->value == "gaussian") {
            s.system_kind = SystemKind::gaussian;
        } else if (e->value == "superposition") {
            s.system_kind = SystemKind::superposition;
        } else {
            fail(e->line, "system.kind", fmt::format("expected gaussian or superposition, got '{}'", e->value));
        }
    }
    if (const auto *e = take("system.mean_x")) {
        s.mean_x = parse_real("system.mean_x", *e);
    }
    if (const auto *e = take("system.mean_p")) {
        s.mean_p = parse_real("system.mean_p", *e);
    }
    if (const auto *e = take("system.width")) {
        s.width = parse_positive("system.width", *e);
    }
    if (const auto *e = take("superposition.region_fraction")) {
        s.region_fraction = parse_positive("superposition.region_fraction", *e);
        if (s.region_fraction > 0.5) {
            fail(e->line, "superposition.region_fraction", "must not exceed 0.5 (regions would overlap)");
        }
    }

    auto grid_length = [&](const std::string &key, std::size_t axis) {
        if (const auto *e = take(key)) {
            if (e->value == "auto") {
                s.grid.auto_length[axis] = true;
            } else {
                s.grid.length[axis] = parse_positive(key, *e);
                s.grid.auto_length[axis] = false;
            }
        }
    };
    if (const auto *e = take("grid.n")) {
        const auto n = parse_points("grid.n", *e);
        s.grid.n = {n, n, n};
    }
    for (std::size_t axis = 0; axis < 3; ++axis) {
        grid_length("grid.length", axis);
    }
    for (std::size_t axis = 0; axis < 3; ++axis) {
        const std::string prefix = fmt::format("grid.{}.", kAxisKeys[axis]);
        if (const auto *e = take(prefix + "n")) {
            s.grid.n[axis] = parse_points(prefix + "n", *e);
        }
        grid_length(prefix + "length", axis);
    }

    for (const auto &[key, entry] : entries) {
        if (!known.count(key)) {
            fail(entry.line, key, "unknown key");
        }
    }

    uint64_t expected = 1;
    for (const auto &[index, packet] : packet_entries) {
        const std::string prefix = fmt::format("packet.{}.", index);
        if (index != expected) {
            fail(packet.first_line, prefix + "*", fmt::format("packet {} is missing; packets are numbered 1, 2, ...",
                                                              expected));
        }
        ++expected;
        GaussianPacket p;
        p.width = s.system_width();
        double magnitude = 1.0;
        double phase = 0.0;
        for (const auto &[field, entry] : packet.fields) {
            const std::string key = prefix + field;
            if (field == "coefficient") {
                magnitude = parse_real(key, entry);
            } else if (field == "phase") {
                phase = parse_real(key, entry);
            } else if (field == "mean_x") {
                p.mean_x = parse_real(key, entry);
            } else if (field == "mean_p") {
                p.mean_p = parse_real(key, entry);
            } else {
                p.width = parse_positive(key, entry);
            }
        }
        p.coefficient = std::polar(1.0, phase) * magnitude;
        s.packets.push_back(p);
    }

    if (s.system_kind == SystemKind::superposition) {
        if (s.packets.empty()) {
            fail(0, "system.kind", "superposition needs at least one packet.N entry");
        }
        double total = 0.0;
        for (const auto &p : s.packets) {
            total += std::norm(p.coefficient);
        }
        if (!(total > 0.0)) {
            fail(0, "packet.*.coefficient", "all coefficients are zero");
        }
        if (backend_entry == nullptr) {
            s.backend = BackendChoice::grid;
        } else if (s.backend != BackendChoice::grid) {
            fail(backend_entry->line, "backend", "a superposition is not Gaussian; use backend = grid");
        }
    } else if (!s.packets.empty()) {
        fail(packet_entries.begin()->second.first_line, "system.kind",
             "packet entries need system.kind = superposition");
    }
    return s;
}

Scenario load_scenario(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError(fmt::format("cannot read scenario file '{}'", path.string()));
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario(buffer.str());
}

}  // namespace akmeter
