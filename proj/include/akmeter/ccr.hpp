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

// Exact algebra generated by the canonical operators of one system degree of
// freedom (x, p) and two meters (muX, piX), (muP, piP), with [q, p] = i*hbar inside
// each conjugate pair and every other pair commuting.

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string_view>

#include "akmeter/exact.hpp"

namespace akmeter {

/// The six canonical generators, in the fixed order used for normal ordering.
enum class Generator : uint8_t { x = 0, p = 1, muX = 2, piX = 3, muP = 4, piP = 5 };

inline constexpr std::size_t kGeneratorCount = 6;
inline constexpr std::array<Generator, kGeneratorCount> kAllGenerators = {
    Generator::x, Generator::p, Generator::muX, Generator::piX, Generator::muP, Generator::piP};

std::string_view generator_name(Generator g);
inline std::size_t index_of(Generator g) { return static_cast<std::size_t>(g); }

/// Omega in [q_j, q_k] = i*hbar*Omega_jk: +1 for (position, momentum) of the same
/// pair, -1 for the reverse, 0 otherwise.
int commutation_sign(Generator a, Generator b);

/// Exponents of x, p, muX, piX, muP, piP in canonical order.
using Monomial = std::array<uint16_t, kGeneratorCount>;

int total_degree(const Monomial &m);

/// Normal-ordered polynomial in the canonical generators with exact coefficients.
class CanonicalPolynomial {
  public:
    CanonicalPolynomial() = default;

    static CanonicalPolynomial constant(const ExactScalar &c);
    static CanonicalPolynomial generator(Generator g);
    static CanonicalPolynomial term(const Monomial &m, const ExactScalar &c);

    const std::map<Monomial, ExactScalar> &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    /// Degree of the highest monomial; -1 for the zero polynomial.
    int degree() const;
    /// Coefficient of a monomial (zero if absent).
    ExactScalar coefficient(const Monomial &m) const;

    CanonicalPolynomial operator-() const;
    CanonicalPolynomial &operator+=(const CanonicalPolynomial &other);
    CanonicalPolynomial &operator-=(const CanonicalPolynomial &other);
    CanonicalPolynomial &operator*=(const ExactScalar &scale);

    friend CanonicalPolynomial operator+(CanonicalPolynomial a, const CanonicalPolynomial &b) { return a += b; }
    friend CanonicalPolynomial operator-(CanonicalPolynomial a, const CanonicalPolynomial &b) { return a -= b; }
    friend CanonicalPolynomial operator*(CanonicalPolynomial a, const ExactScalar &s) { return a *= s; }
    friend CanonicalPolynomial operator*(const ExactScalar &s, CanonicalPolynomial a) { return a *= s; }
    bool operator==(const CanonicalPolynomial &other) const = default;

    void add_term(const Monomial &m, const ExactScalar &c);

  private:
    std::map<Monomial, ExactScalar> terms_;
};

/// Normal-ordered product P*Q.
CanonicalPolynomial multiply(const CanonicalPolynomial &lhs, const CanonicalPolynomial &rhs);
inline CanonicalPolynomial operator*(const CanonicalPolynomial &a, const CanonicalPolynomial &b) {
    return multiply(a, b);
}

CanonicalPolynomial commutator(const CanonicalPolynomial &lhs, const CanonicalPolynomial &rhs);

/// Hermitian adjoint: conjugates coefficients and reverses operator order.
CanonicalPolynomial adjoint(const CanonicalPolynomial &poly);

inline constexpr int kDefaultMaxSteps = 16;

/// exp(-ad_K)(P) = exp(-K) P exp(K).
///
/// Each generator is conjugated through its iterated commutator series, which must
/// vanish within `max_steps` terms; the results are then substituted into P.
/// Throws NonTerminatingSeries otherwise.
CanonicalPolynomial adjoint_conjugate(const CanonicalPolynomial &k, const CanonicalPolynomial &poly,
                                      int max_steps = kDefaultMaxSteps);

/// K = -(i g / hbar) (piP p + piX x), so that U = exp(K).
CanonicalPolynomial ak_generator(const Rational &coupling = Rational(1));

/// U^dagger q U for each generator, indexed by Generator.
struct HeisenbergFinals {
    std::array<CanonicalPolynomial, kGeneratorCount> finals;

    const CanonicalPolynomial &operator[](Generator g) const { return finals[index_of(g)]; }
};

HeisenbergFinals heisenberg_finals(const CanonicalPolynomial &k, int max_steps = kDefaultMaxSteps);

enum class ErrorKind : uint8_t { eXi = 0, ePi = 1, eXf = 2, ePf = 3, dX = 4, dP = 5 };
inline constexpr std::array<ErrorKind, 6> kAllErrorKinds = {ErrorKind::eXi, ErrorKind::ePi, ErrorKind::eXf,
                                                             ErrorKind::ePf, ErrorKind::dX,  ErrorKind::dP};
std::string_view error_kind_name(ErrorKind kind);

/// Retrodictive errors, predictive errors and disturbances of the process generated by K.
struct ErrorDisturbanceOperators {
    CanonicalPolynomial eXi;  // muXf - x
    CanonicalPolynomial ePi;  // muPf - p
    CanonicalPolynomial eXf;  // muXf - xf
    CanonicalPolynomial ePf;  // muPf - pf
    CanonicalPolynomial dX;   // xf - x
    CanonicalPolynomial dP;   // pf - p

    const CanonicalPolynomial &operator[](ErrorKind kind) const;
};

ErrorDisturbanceOperators derive_error_disturbance(const CanonicalPolynomial &k,
                                                   int max_steps = kDefaultMaxSteps);
ErrorDisturbanceOperators error_disturbance_from_finals(const HeisenbergFinals &finals);

struct LinearForm {
    std::array<ExactScalar, kGeneratorCount> coefficients;
    ExactScalar constant;

    const ExactScalar &operator[](Generator g) const { return coefficients[index_of(g)]; }
    bool operator==(const LinearForm &other) const = default;
};

/// Throws NotLinear if any monomial has degree >= 2.
LinearForm linear_part(const CanonicalPolynomial &poly);

}  // namespace akmeter
