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

#include "akmeter/exact.hpp"

#include <cmath>

#include "akmeter/errors.hpp"

namespace akmeter {

Rational rational_from_double(double value) {
    if (!std::isfinite(value)) {
        throw DomainError("cannot represent a non-finite value exactly");
    }
    return Rational(value);
}

ExactScalar::ExactScalar(Rational re) : ExactScalar(std::move(re), Rational(0), 0) {}

ExactScalar::ExactScalar(int re) : ExactScalar(Rational(re), Rational(0), 0) {}

ExactScalar::ExactScalar(Rational re, Rational im, int hbar_power) {
    add_term(hbar_power, GaussianRational{std::move(re), std::move(im)});
}

ExactScalar ExactScalar::imaginary_unit() { return ExactScalar(Rational(0), Rational(1), 0); }

ExactScalar ExactScalar::hbar(int power) { return ExactScalar(Rational(1), Rational(0), power); }

bool ExactScalar::is_real() const {
    for (const auto &[power, c] : terms_) {
        if (!c.im.is_zero()) {
            return false;
        }
    }
    return true;
}

bool ExactScalar::is_rational() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0 && is_real());
}

ExactScalar ExactScalar::conj() const {
    ExactScalar out = *this;
    for (auto &[power, c] : out.terms_) {
        c.im = -c.im;
    }
    return out;
}

std::complex<double> ExactScalar::evaluate(double hbar) const {
    std::complex<double> total = 0.0;
    for (const auto &[power, c] : terms_) {
        const double scale = std::pow(hbar, power);
        total += std::complex<double>(c.re.convert_to<double>(), c.im.convert_to<double>()) * scale;
    }
    return total;
}

ExactScalar ExactScalar::operator-() const {
    ExactScalar out = *this;
    for (auto &[power, c] : out.terms_) {
        c.re = -c.re;
        c.im = -c.im;
    }
    return out;
}

void ExactScalar::add_term(int power, const GaussianRational &value) {
    if (value.is_zero()) {
        return;
    }
    auto [it, inserted] = terms_.try_emplace(power, value);
    if (!inserted) {
        it->second.re += value.re;
        it->second.im += value.im;
        if (it->second.is_zero()) {
            terms_.erase(it);
        }
    }
}

ExactScalar &ExactScalar::operator+=(const ExactScalar &other) {
    for (const auto &[power, c] : other.terms_) {
        add_term(power, c);
    }
    return *this;
}

ExactScalar &ExactScalar::operator-=(const ExactScalar &other) { return *this += -other; }

ExactScalar &ExactScalar::operator*=(const ExactScalar &other) {
    ExactScalar product;
    for (const auto &[pa, a] : terms_) {
        for (const auto &[pb, b] : other.terms_) {
            product.add_term(pa + pb, GaussianRational{a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re});
        }
    }
    terms_ = std::move(product.terms_);
    return *this;
}

}  // namespace akmeter
