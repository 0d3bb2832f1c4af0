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

#include <complex>
#include <map>

#include <boost/multiprecision/cpp_int.hpp>

namespace akmeter {

using Rational = boost::multiprecision::cpp_rational;

/// Exact conversion; every finite double is a dyadic rational.
Rational rational_from_double(double value);

/// A complex number with rational real and imaginary parts.
struct GaussianRational {
    Rational re;
    Rational im;

    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    bool operator==(const GaussianRational &other) const = default;
};

/// Exact scalar: a Laurent polynomial in the formal symbol hbar whose coefficients
/// are Gaussian rationals.
///
/// Stored sparsely as power -> coefficient with zero coefficients removed, so the
/// zero scalar has exactly one representation (the empty map) and equality is
/// structural.
class ExactScalar {
  public:
    ExactScalar() = default;
    ExactScalar(Rational re);  // NOLINT(google-explicit-constructor)
    ExactScalar(int re);       // NOLINT(google-explicit-constructor)
    ExactScalar(Rational re, Rational im, int hbar_power = 0);

    static ExactScalar imaginary_unit();
    static ExactScalar hbar(int power = 1);

    bool is_zero() const { return terms_.empty(); }
    bool is_real() const;
    /// True when the scalar is a plain rational (no i, no hbar).
    bool is_rational() const;
    const std::map<int, GaussianRational> &terms() const { return terms_; }

    ExactScalar conj() const;
    /// Substitutes a numeric hbar.
    std::complex<double> evaluate(double hbar) const;

    ExactScalar operator-() const;
    ExactScalar &operator+=(const ExactScalar &other);
    ExactScalar &operator-=(const ExactScalar &other);
    ExactScalar &operator*=(const ExactScalar &other);

    friend ExactScalar operator+(ExactScalar a, const ExactScalar &b) { return a += b; }
    friend ExactScalar operator-(ExactScalar a, const ExactScalar &b) { return a -= b; }
    friend ExactScalar operator*(ExactScalar a, const ExactScalar &b) { return a *= b; }
    bool operator==(const ExactScalar &other) const = default;

  private:
    void add_term(int power, const GaussianRational &value);

    std::map<int, GaussianRational> terms_;
};

}  // namespace akmeter
