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

// Plain-text operator expressions, e.g. "muX + x + (1/2) piP" or "-i*hbar".
// The grammar is described in docs/expression-format.md; format_* output always
// parses back to an identical value.

#pragma once

#include <string>
#include <string_view>

#include "akmeter/ccr.hpp"
#include "akmeter/exact.hpp"

namespace akmeter {

std::string format_rational(const Rational &r);
std::string format_scalar(const ExactScalar &s);
std::string format_polynomial(const CanonicalPolynomial &poly);

/// Products of generators are normal-ordered as they are parsed, so "p x" yields
/// "x p - i*hbar". Throws ParseError with the offending column.
CanonicalPolynomial parse_polynomial(std::string_view text);

/// Parses an expression that must reduce to a scalar (no generators).
ExactScalar parse_scalar(std::string_view text);

}  // namespace akmeter
