# Copyright 2026 The akmeter Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import math

import pytest

import akmeter


def matched(lam=1.0):
    s = akmeter.Scenario()
    s.lam = lam
    s.width = lam / math.sqrt(2.0)
    return s


def test_derive_lists_commutators():
    text = akmeter.derive()
    assert "[eXi, ePi] = -i*hbar" in text
    assert "[eXf, ePf] = i*hbar" in text
    assert text == akmeter.derive(1, 1)


def test_gaussian_report_closed_forms():
    r = akmeter.report(matched(2.0))
    assert r.backend == "gaussian"
    assert r.deltas["ei_x"] == pytest.approx(2.0 / math.sqrt(2.0), abs=1e-12)
    assert r.deltas["d_p"] == pytest.approx(0.5, abs=1e-12)
    records = {rec.name: rec for rec in r.records()}
    assert len(records) == 11
    assert all(rec.satisfied for rec in records.values())
    assert records["ak_extended"].margin == pytest.approx(0.0, abs=1e-9)


def test_grid_matches_gaussian():
    s = akmeter.parse_scenario("lambda = 1.2\nsystem.width = 0.8\nsystem.mean_x = 0.3\n")
    s.set_grid(64)
    a = akmeter.report(s, "gaussian")
    b = akmeter.report(s, "grid")
    assert akmeter.relative_difference(a, b) < 1e-5
    assert max(abs(v) for v in b.mean_errors.values()) < 1e-6


def test_config_error_names_line():
    with pytest.raises(akmeter.ConfigError, match="line 2: field 'lambda'"):
        akmeter.parse_scenario("hbar = 1\nlambda = -2\n")


def test_sweep_and_superposition():
    rows = akmeter.sweep(matched(), [0.5, 1.0, -1.0])
    assert [row["ok"] for row in rows] == [True, True, False]
    assert rows[0]["deltas"]["ei_x"] == pytest.approx(0.5 / math.sqrt(2.0), abs=1e-12)

    s = akmeter.parse_scenario(
        "system.kind = superposition\ngrid.n = 64\ngrid.length = auto\n"
        "packet.1.coefficient = 0.6\npacket.1.mean_x = -3.5355\npacket.1.mean_p = -3.5355\n"
        "packet.2.coefficient = 0.8\npacket.2.mean_x = 3.5355\npacket.2.mean_p = 3.5355\n"
    )
    out = akmeter.superposition(s)
    masses = [row["mass"] for row in out["regions"]]
    assert masses == pytest.approx([0.36, 0.64], abs=0.01)


def test_sample_is_seeded():
    s = matched()
    s.set_grid(32, 12.0)
    a = akmeter.sample(s, 100, seed=3)
    assert a == akmeter.sample(s, 100, seed=3)
    assert a != akmeter.sample(s, 100, seed=4)


def test_polarization_and_checks():
    assert akmeter.polarization_check(4, 4, 20, 1)
    with pytest.raises(akmeter.DimensionError):
        akmeter.polarization_check(17, 2, 1, 0)
    assert all(passed for _, passed, _ in akmeter.check())
