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

"""Simultaneous position and momentum measurement with two meters."""

from ._core import (
    AdmissibilityError,
    ConfigError,
    DimensionError,
    DomainError,
    InequalityRecord,
    Report,
    ResolutionError,
    Scenario,
    check,
    derive,
    load_scenario,
    parse_scenario,
    polarization_check,
    relative_difference,
    report,
    sample,
    superposition,
    sweep,
)

__all__ = [
    "AdmissibilityError",
    "ConfigError",
    "DimensionError",
    "DomainError",
    "InequalityRecord",
    "Report",
    "ResolutionError",
    "Scenario",
    "check",
    "derive",
    "load_scenario",
    "parse_scenario",
    "polarization_check",
    "relative_difference",
    "report",
    "sample",
    "superposition",
    "sweep",
]
