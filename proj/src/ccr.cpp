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

#include "akmeter/ccr.hpp"

#include <numeric>
#include <string>
#include <vector>

#include "akmeter/errors.hpp"

namespace akmeter {

namespace {

constexpr std::size_t kModes = 3;

Rational binomial(unsigned n, unsigned k) {
    Rational out = 1;
    for (unsigned j = 1; j <= k; ++j) {
        out *= Rational(n - k + j, j);
    }
    return out;
}

Rational factorial(unsigned n) {
    Rational out = 1;
    for (unsigned j = 2; j <= n; ++j) {
        out *= j;
    }
    return out;
}

// (-i hbar)^j
ExactScalar minus_i_hbar_power(unsigned j) {
    static const ExactScalar base(Rational(0), Rational(-1), 1);
    ExactScalar out(1);
    for (unsigned n = 0; n < j; ++n) {
        out *= base;
    }
    return out;
}

struct ModeTerm {
    ExactScalar coefficient;
    uint16_t position_power;
    uint16_t momentum_power;
};

// x^a1 p^b1 x^a2 p^b2 for a single conjugate pair, reordered with
// p^b x^a = sum_j j! C(b,j) C(a,j) (-i hbar)^j x^(a-j) p^(b-j).
std::vector<ModeTerm> reorder_mode(uint16_t a1, uint16_t b1, uint16_t a2, uint16_t b2) {
    std::vector<ModeTerm> out;
    const unsigned top = std::min(b1, a2);
    out.reserve(top + 1);
    for (unsigned j = 0; j <= top; ++j) {
        Rational weight = factorial(j) * binomial(b1, j) * binomial(a2, j);
        out.push_back(ModeTerm{ExactScalar(weight) * minus_i_hbar_power(j), static_cast<uint16_t>(a1 + a2 - j),
                               static_cast<uint16_t>(b1 + b2 - j)});
    }
    return out;
}

CanonicalPolynomial multiply_monomials(const Monomial &lhs, const Monomial &rhs, const ExactScalar &scale) {
    std::array<std::vector<ModeTerm>, kModes> per_mode;
    for (std::size_t mode = 0; mode < kModes; ++mode) {
        per_mode[mode] = reorder_mode(lhs[2 * mode], lhs[2 * mode + 1], rhs[2 * mode], rhs[2 * mode + 1]);
    }
    CanonicalPolynomial out;
    for (const auto &t0 : per_mode[0]) {
        for (const auto &t1 : per_mode[1]) {
            for (const auto &t2 : per_mode[2]) {
                Monomial m = {t0.position_power, t0.momentum_power, t1.position_power,
                              t1.momentum_power, t2.position_power, t2.momentum_power};
                out.add_term(m, scale * t0.coefficient * t1.coefficient * t2.coefficient);
            }
        }
    }
    return out;
}

Monomial unit_monomial(Generator g) {
    Monomial m{};
    m[index_of(g)] = 1;
    return m;
}

}  // namespace

std::string_view generator_name(Generator g) {
    switch (g) {
        case Generator::x:
            return "x";
        case Generator::p:
            return "p";
        case Generator::muX:
            return "muX";
        case Generator::piX:
            return "piX";
        case Generator::muP:
            return "muP";
        case Generator::piP:
            return "piP";
    }
    return "?";
}

int commutation_sign(Generator a, Generator b) {
    const auto ia = index_of(a);
    const auto ib = index_of(b);
    if (ia / 2 != ib / 2 || ia == ib) {
        return 0;
    }
    return ia % 2 == 0 ? 1 : -1;
}

int total_degree(const Monomial &m) { return std::accumulate(m.begin(), m.end(), 0); }

CanonicalPolynomial CanonicalPolynomial::constant(const ExactScalar &c) { return term(Monomial{}, c); }

CanonicalPolynomial CanonicalPolynomial::generator(Generator g) { return term(unit_monomial(g), ExactScalar(1)); }

CanonicalPolynomial CanonicalPolynomial::term(const Monomial &m, const ExactScalar &c) {
    CanonicalPolynomial out;
    out.add_term(m, c);
    return out;
}

int CanonicalPolynomial::degree() const {
    int best = -1;
    for (const auto &[m, c] : terms_) {
        best = std::max(best, total_degree(m));
    }
    return best;
}

ExactScalar CanonicalPolynomial::coefficient(const Monomial &m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? ExactScalar() : it->second;
}

void CanonicalPolynomial::add_term(const Monomial &m, const ExactScalar &c) {
    if (c.is_zero()) {
        return;
    }
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) {
            terms_.erase(it);
        }
    }
}

CanonicalPolynomial CanonicalPolynomial::operator-() const {
    CanonicalPolynomial out = *this;
    for (auto &[m, c] : out.terms_) {
        c = -c;
    }
    return out;
}

CanonicalPolynomial &CanonicalPolynomial::operator+=(const CanonicalPolynomial &other) {
    for (const auto &[m, c] : other.terms_) {
        add_term(m, c);
    }
    return *this;
}

CanonicalPolynomial &CanonicalPolynomial::operator-=(const CanonicalPolynomial &other) {
    for (const auto &[m, c] : other.terms_) {
        add_term(m, -c);
    }
    return *this;
}

CanonicalPolynomial &CanonicalPolynomial::operator*=(const ExactScalar &scale) {
    if (scale.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto &[m, c] : terms_) {
        c *= scale;
    }
    return *this;
}

CanonicalPolynomial multiply(const CanonicalPolynomial &lhs, const CanonicalPolynomial &rhs) {
    CanonicalPolynomial out;
    for (const auto &[ml, cl] : lhs.terms()) {
        for (const auto &[mr, cr] : rhs.terms()) {
            out += multiply_monomials(ml, mr, cl * cr);
        }
    }
    return out;
}

CanonicalPolynomial commutator(const CanonicalPolynomial &lhs, const CanonicalPolynomial &rhs) {
    return multiply(lhs, rhs) - multiply(rhs, lhs);
}

CanonicalPolynomial adjoint(const CanonicalPolynomial &poly) {
    CanonicalPolynomial out;
    for (const auto &[m, c] : poly.terms()) {
        // (x^a p^b)^dagger = p^b x^a within each pair; distinct pairs commute.
        Monomial momenta{};
        Monomial positions{};
        for (std::size_t mode = 0; mode < kModes; ++mode) {
            positions[2 * mode] = m[2 * mode];
            momenta[2 * mode + 1] = m[2 * mode + 1];
        }
        out += multiply_monomials(momenta, positions, c.conj());
    }
    return out;
}

CanonicalPolynomial adjoint_conjugate(const CanonicalPolynomial &k, const CanonicalPolynomial &poly, int max_steps) {
    if (k.is_zero()) {
        return poly;
    }
    std::array<bool, kGeneratorCount> needed{};
    for (const auto &[m, c] : poly.terms()) {
        for (std::size_t j = 0; j < kGeneratorCount; ++j) {
            needed[j] = needed[j] || m[j] > 0;
        }
    }

    // exp(-ad_K) q = sum_n (-1)^n ad_K^n(q) / n!
    std::array<CanonicalPolynomial, kGeneratorCount> conjugated;
    for (std::size_t j = 0; j < kGeneratorCount; ++j) {
        if (!needed[j]) {
            continue;
        }
        CanonicalPolynomial term = CanonicalPolynomial::generator(kAllGenerators[j]);
        CanonicalPolynomial sum = term;
        bool terminated = false;
        for (int n = 1; n <= max_steps; ++n) {
            term = commutator(k, term) * ExactScalar(Rational(-1, n));
            if (term.is_zero()) {
                terminated = true;
                break;
            }
            sum += term;
        }
        if (!terminated) {
            throw NonTerminatingSeries("commutator series for " + std::string(generator_name(kAllGenerators[j])) +
                                       " did not vanish within " + std::to_string(max_steps) + " steps");
        }
        conjugated[j] = std::move(sum);
    }

    // Conjugation is an algebra homomorphism, so substitute generator by generator.
    std::array<std::vector<CanonicalPolynomial>, kGeneratorCount> powers;
    auto power_of = [&](std::size_t j, uint16_t e) -> const CanonicalPolynomial & {
        auto &cache = powers[j];
        if (cache.empty()) {
            cache.push_back(CanonicalPolynomial::constant(ExactScalar(1)));
        }
        while (cache.size() <= e) {
            cache.push_back(multiply(cache.back(), conjugated[j]));
        }
        return cache[e];
    };

    CanonicalPolynomial out;
    for (const auto &[m, c] : poly.terms()) {
        CanonicalPolynomial product = CanonicalPolynomial::constant(c);
        for (std::size_t j = 0; j < kGeneratorCount; ++j) {
            if (m[j] > 0) {
                product = multiply(product, power_of(j, m[j]));
            }
        }
        out += product;
    }
    return out;
}

CanonicalPolynomial ak_generator(const Rational &coupling) {
    // -(i g / hbar)
    const ExactScalar scale(Rational(0), -coupling, -1);
    Monomial pip_p{};
    pip_p[index_of(Generator::p)] = 1;
    pip_p[index_of(Generator::piP)] = 1;
    Monomial pix_x{};
    pix_x[index_of(Generator::x)] = 1;
    pix_x[index_of(Generator::piX)] = 1;
    CanonicalPolynomial k;
    k.add_term(pip_p, scale);
    k.add_term(pix_x, scale);
    return k;
}

HeisenbergFinals heisenberg_finals(const CanonicalPolynomial &k, int max_steps) {
    HeisenbergFinals out;
    for (auto g : kAllGenerators) {
        out.finals[index_of(g)] = adjoint_conjugate(k, CanonicalPolynomial::generator(g), max_steps);
    }
    return out;
}

std::string_view error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::eXi:
            return "eXi";
        case ErrorKind::ePi:
            return "ePi";
        case ErrorKind::eXf:
            return "eXf";
        case ErrorKind::ePf:
            return "ePf";
        case ErrorKind::dX:
            return "dX";
        case ErrorKind::dP:
            return "dP";
    }
    return "?";
}

const CanonicalPolynomial &ErrorDisturbanceOperators::operator[](ErrorKind kind) const {
    switch (kind) {
        case ErrorKind::eXi:
            return eXi;
        case ErrorKind::ePi:
            return ePi;
        case ErrorKind::eXf:
            return eXf;
        case ErrorKind::ePf:
            return ePf;
        case ErrorKind::dX:
            return dX;
        case ErrorKind::dP:
            break;
    }
    return dP;
}

ErrorDisturbanceOperators error_disturbance_from_finals(const HeisenbergFinals &f) {
    const auto x = CanonicalPolynomial::generator(Generator::x);
    const auto p = CanonicalPolynomial::generator(Generator::p);
    return ErrorDisturbanceOperators{
        f[Generator::muX] - x,
        f[Generator::muP] - p,
        f[Generator::muX] - f[Generator::x],
        f[Generator::muP] - f[Generator::p],
        f[Generator::x] - x,
        f[Generator::p] - p,
    };
}

ErrorDisturbanceOperators derive_error_disturbance(const CanonicalPolynomial &k, int max_steps) {
    return error_disturbance_from_finals(heisenberg_finals(k, max_steps));
}

LinearForm linear_part(const CanonicalPolynomial &poly) {
    LinearForm out;
    for (const auto &[m, c] : poly.terms()) {
        const int d = total_degree(m);
        if (d == 0) {
            out.constant = c;
            continue;
        }
        if (d > 1) {
            throw NotLinear("polynomial has a term of degree " + std::to_string(d));
        }
        for (std::size_t j = 0; j < kGeneratorCount; ++j) {
            if (m[j] == 1) {
                out.coefficients[j] = c;
            }
        }
    }
    return out;
}

}  // namespace akmeter
