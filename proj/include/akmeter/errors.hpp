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

#pragma once

#include <stdexcept>
#include <string>

namespace akmeter {

/// Conjugation series did not vanish within the allowed number of steps.
class NonTerminatingSeries : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A polynomial of degree two or more was passed where a linear form is required.
class NotLinear : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// A numeric parameter lies outside its domain (non-positive width, rectangle off the grid, ...).
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Covariance violates Heisenberg positivity.
class AdmissibilityError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// The lattice cannot faithfully represent the requested state or its evolution.
class ResolutionError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

class ParseError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Scenario file problem; the message names the line and field.
class ConfigError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace akmeter
