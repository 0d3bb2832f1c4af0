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

#include "akmeter/expression.hpp"

#include <random>

#include <gtest/gtest.h>

#include "akmeter/errors.hpp"

using namespace akmeter;

TEST(Expression, formats_simple_terms) {
    EXPECT_EQ(format_polynomial(CanonicalPolynomial()), "0");
    EXPECT_EQ(format_polynomial(CanonicalPolynomial::generator(Generator::piP) * ExactScalar(Rational(1, 2))),
              "(1/2) piP");
    EXPECT_EQ(format_polynomial(CanonicalPolynomial::constant(ExactScalar(Rational(0), Rational(-1), 1))),
              "-i*hbar");
    EXPECT_EQ(format_rational(Rational(-3, 4)), "-3/4");
}

TEST(Expression, parses_and_normal_orders) {
    EXPECT_EQ(parse_polynomial("p x"), parse_polynomial("x p - i*hbar"));
    EXPECT_EQ(parse_polynomial("p*x"), parse_polynomial("x*p - i*hbar"));
    EXPECT_EQ(parse_polynomial("x^2"), parse_polynomial("x x"));
    EXPECT_EQ(parse_polynomial("(muX + x)(muX - x)"), parse_polynomial("muX^2 - x^2"));
    EXPECT_EQ(parse_scalar("hbar^-1 * hbar"), ExactScalar(1));
    EXPECT_EQ(parse_scalar("3/6"), ExactScalar(Rational(1, 2)));
}

TEST(Expression, round_trips) {
    const char *samples[] = {
        "x + piP",
        "muX + x + (1/2) piP",
        "-i*hbar^-1 x piX - i*hbar^-1 p piP",
        "(1 + 2*i) x^2 p - (3/7) hbar^2 muP",
        "-(1/2) piX + muP",
        "0",
    };
    for (const char *text : samples) {
        const auto poly = parse_polynomial(text);
        EXPECT_EQ(parse_polynomial(format_polynomial(poly)), poly) << text;
    }
}

TEST(Expression, random_round_trip) {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> pick(0, 5);
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 5);
    std::uniform_int_distribution<int> power(-2, 2);
    for (int trial = 0; trial < 50; ++trial) {
        CanonicalPolynomial poly;
        for (int t = 0; t < 4; ++t) {
            Monomial m{};
            m[pick(rng)] += static_cast<uint16_t>(pick(rng) % 3);
            m[pick(rng)] += static_cast<uint16_t>(pick(rng) % 2);
            poly.add_term(m, ExactScalar(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)), power(rng)));
        }
        const auto text = format_polynomial(poly);
        EXPECT_EQ(parse_polynomial(text), poly) << text;
    }
}

TEST(Expression, reports_error_column) {
    try {
        parse_polynomial("x + * p");
        FAIL() << "expected ParseError";
    } catch (const ParseError &e) {
        EXPECT_NE(std::string(e.what()).find("column 5"), std::string::npos) << e.what();
    }
    EXPECT_THROW(parse_polynomial("x^-1"), ParseError);
    EXPECT_THROW(parse_polynomial("y"), ParseError);
    EXPECT_THROW(parse_polynomial("(x + p"), ParseError);
    EXPECT_THROW(parse_scalar("x"), ParseError);
}
