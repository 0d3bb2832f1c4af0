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

#include <gtest/gtest.h>

using namespace akmeter;

TEST(ExactScalar, rational_from_double_is_exact) {
    const Rational tenth = rational_from_double(0.1);
    EXPECT_EQ(tenth, Rational(3602879701896397LL) / Rational(36028797018963968LL));
    EXPECT_EQ(rational_from_double(-0.5), Rational(-1, 2));
    EXPECT_EQ(rational_from_double(3.0), Rational(3));
    EXPECT_EQ(static_cast<double>(rational_from_double(1.0 / 3.0)), 1.0 / 3.0);
}

TEST(ExactScalar, i_squared_is_minus_one) {
    const auto i = ExactScalar::imaginary_unit();
    EXPECT_EQ(i * i, ExactScalar(-1));
}

TEST(ExactScalar, hbar_powers_cancel) {
    EXPECT_EQ(ExactScalar::hbar(1) * ExactScalar::hbar(-1), ExactScalar(1));
    EXPECT_EQ(ExactScalar::hbar(2) * ExactScalar::hbar(-3), ExactScalar::hbar(-1));
}

TEST(ExactScalar, zero_is_canonical) {
    const ExactScalar a(Rational(1, 3), Rational(2), 1);
    EXPECT_TRUE((a - a).is_zero());
    EXPECT_EQ(a - a, ExactScalar());
    EXPECT_TRUE(ExactScalar(0).is_zero());
}

TEST(ExactScalar, conj_and_realness) {
    const ExactScalar a(Rational(1, 2), Rational(-3, 4), 2);
    EXPECT_FALSE(a.is_real());
    EXPECT_TRUE((a + a.conj()).is_real());
    EXPECT_TRUE(ExactScalar(Rational(5, 7)).is_rational());
    EXPECT_FALSE(ExactScalar::hbar().is_rational());
    EXPECT_TRUE(ExactScalar::hbar().is_real());
}

TEST(ExactScalar, evaluate_substitutes_hbar) {
    const ExactScalar a = ExactScalar(Rational(1, 2), Rational(0), 2) + ExactScalar(Rational(0), Rational(3), -1);
    const auto v = a.evaluate(2.0);
    EXPECT_DOUBLE_EQ(v.real(), 2.0);
    EXPECT_DOUBLE_EQ(v.imag(), 1.5);
}

TEST(ExactScalar, distributes) {
    const ExactScalar a(Rational(2, 3), Rational(1), 1);
    const ExactScalar b(Rational(-1), Rational(1, 5), -1);
    const ExactScalar c(Rational(7), Rational(0), 0);
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(-(a * b), (-a) * b);
}
