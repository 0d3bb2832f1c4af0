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

#include <algorithm>
#include <cctype>
#include <optional>
#include <vector>

#include "akmeter/errors.hpp"

namespace akmeter {

namespace {

// One signed piece r * [i] * hbar^k of a scalar.
struct ScalarPiece {
    Rational value;
    bool imaginary;
    int power;
};

std::vector<ScalarPiece> pieces_of(const ExactScalar &s) {
    std::vector<ScalarPiece> out;
    for (const auto &[power, c] : s.terms()) {
        if (!c.re.is_zero()) {
            out.push_back({c.re, false, power});
        }
        if (!c.im.is_zero()) {
            out.push_back({c.im, true, power});
        }
    }
    return out;
}

// Unsigned factors of a piece, "*"-joined; empty when the piece is exactly 1.
std::string piece_magnitude(const ScalarPiece &piece) {
    std::vector<std::string> factors;
    const Rational mag = abs(piece.value);
    if (mag != 1) {
        factors.push_back(denominator(mag) == 1 ? format_rational(mag) : "(" + format_rational(mag) + ")");
    }
    if (piece.imaginary) {
        factors.emplace_back("i");
    }
    if (piece.power == 1) {
        factors.emplace_back("hbar");
    } else if (piece.power != 0) {
        factors.push_back("hbar^" + std::to_string(piece.power));
    }
    std::string out;
    for (const auto &f : factors) {
        if (!out.empty()) {
            out += "*";
        }
        out += f;
    }
    return out;
}

std::string format_monomial(const Monomial &m) {
    std::string out;
    for (auto g : kAllGenerators) {
        const auto e = m[index_of(g)];
        if (e == 0) {
            continue;
        }
        if (!out.empty()) {
            out += " ";
        }
        out += generator_name(g);
        if (e > 1) {
            out += "^" + std::to_string(e);
        }
    }
    return out;
}

void append_signed(std::string &out, bool negative, const std::string &body) {
    if (out.empty()) {
        out = negative ? "-" + body : body;
    } else {
        out += negative ? " - " : " + ";
        out += body;
    }
}

// ---- parser ------------------------------------------------------------------

enum class TokenKind { number, ident, lparen, rparen, plus, minus, star, slash, caret, end };

struct Token {
    TokenKind kind;
    std::string text;
    std::size_t column;
};

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        const std::size_t start = i;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                ++i;
            }
            out.push_back({TokenKind::number, std::string(text.substr(start, i - start)), start});
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            while (i < text.size() && std::isalnum(static_cast<unsigned char>(text[i]))) {
                ++i;
            }
            out.push_back({TokenKind::ident, std::string(text.substr(start, i - start)), start});
            continue;
        }
        TokenKind kind;
        switch (c) {
            case '(':
                kind = TokenKind::lparen;
                break;
            case ')':
                kind = TokenKind::rparen;
                break;
            case '+':
                kind = TokenKind::plus;
                break;
            case '-':
                kind = TokenKind::minus;
                break;
            case '*':
                kind = TokenKind::star;
                break;
            case '/':
                kind = TokenKind::slash;
                break;
            case '^':
                kind = TokenKind::caret;
                break;
            default:
                throw ParseError("unexpected character '" + std::string(1, c) + "' at column " +
                                 std::to_string(start + 1));
        }
        out.push_back({kind, std::string(1, c), start});
        ++i;
    }
    out.push_back({TokenKind::end, "", text.size()});
    return out;
}

class Parser {
  public:
    explicit Parser(std::string_view text) : tokens_(tokenize(text)) {}

    CanonicalPolynomial parse() {
        auto value = expression();
        if (peek().kind != TokenKind::end) {
            fail("unexpected '" + peek().text + "'");
        }
        return value;
    }

  private:
    const Token &peek() const { return tokens_[pos_]; }
    const Token &next() { return tokens_[pos_++]; }

    [[noreturn]] void fail(const std::string &what) const {
        throw ParseError(what + " at column " + std::to_string(peek().column + 1));
    }

    void expect(TokenKind kind, const char *what) {
        if (peek().kind != kind) {
            fail(std::string("expected ") + what);
        }
        ++pos_;
    }

    bool starts_factor() const {
        const auto k = peek().kind;
        return k == TokenKind::number || k == TokenKind::ident || k == TokenKind::lparen;
    }

    CanonicalPolynomial expression() {
        bool negative = false;
        if (peek().kind == TokenKind::plus || peek().kind == TokenKind::minus) {
            negative = next().kind == TokenKind::minus;
        }
        CanonicalPolynomial acc = term();
        if (negative) {
            acc = -acc;
        }
        while (peek().kind == TokenKind::plus || peek().kind == TokenKind::minus) {
            const bool minus = next().kind == TokenKind::minus;
            if (minus) {
                acc -= term();
            } else {
                acc += term();
            }
        }
        return acc;
    }

    CanonicalPolynomial term() {
        CanonicalPolynomial acc = power();
        while (true) {
            if (peek().kind == TokenKind::star) {
                ++pos_;
                acc = multiply(acc, power());
            } else if (starts_factor()) {
                acc = multiply(acc, power());
            } else {
                return acc;
            }
        }
    }

    CanonicalPolynomial power() {
        bool is_hbar = peek().kind == TokenKind::ident && peek().text == "hbar";
        CanonicalPolynomial base = primary();
        if (peek().kind != TokenKind::caret) {
            return base;
        }
        ++pos_;
        bool negative = false;
        if (peek().kind == TokenKind::minus) {
            ++pos_;
            negative = true;
        }
        if (peek().kind != TokenKind::number) {
            fail("expected an integer exponent");
        }
        const std::string digits = next().text;
        if (digits.size() > 4) {
            fail("exponent too large");
        }
        const int e = std::stoi(digits);
        if (is_hbar) {
            return CanonicalPolynomial::constant(ExactScalar::hbar(negative ? -e : e));
        }
        if (negative) {
            fail("negative exponents are only allowed on hbar");
        }
        CanonicalPolynomial out = CanonicalPolynomial::constant(ExactScalar(1));
        for (int n = 0; n < e; ++n) {
            out = multiply(out, base);
        }
        return out;
    }

    CanonicalPolynomial primary() {
        const Token &t = peek();
        switch (t.kind) {
            case TokenKind::number: {
                ++pos_;
                Rational value{boost::multiprecision::cpp_int(t.text)};
                if (peek().kind == TokenKind::slash) {
                    ++pos_;
                    if (peek().kind != TokenKind::number) {
                        fail("expected a denominator");
                    }
                    boost::multiprecision::cpp_int den(next().text);
                    if (den == 0) {
                        fail("zero denominator");
                    }
                    value /= Rational(den);
                }
                return CanonicalPolynomial::constant(ExactScalar(value));
            }
            case TokenKind::lparen: {
                ++pos_;
                auto inner = expression();
                expect(TokenKind::rparen, "')'");
                return inner;
            }
            case TokenKind::ident: {
                ++pos_;
                if (t.text == "i") {
                    return CanonicalPolynomial::constant(ExactScalar::imaginary_unit());
                }
                if (t.text == "hbar") {
                    return CanonicalPolynomial::constant(ExactScalar::hbar(1));
                }
                for (auto g : kAllGenerators) {
                    if (t.text == generator_name(g)) {
                        return CanonicalPolynomial::generator(g);
                    }
                }
                --pos_;
                fail("unknown symbol '" + t.text + "'");
            }
            default:
                fail("expected a number, symbol or '('");
        }
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

}  // namespace

std::string format_rational(const Rational &r) {
    if (denominator(r) == 1) {
        return numerator(r).str();
    }
    return numerator(r).str() + "/" + denominator(r).str();
}

std::string format_scalar(const ExactScalar &s) {
    std::string out;
    for (const auto &piece : pieces_of(s)) {
        std::string body = piece_magnitude(piece);
        append_signed(out, piece.value < 0, body.empty() ? "1" : body);
    }
    return out.empty() ? "0" : out;
}

std::string format_polynomial(const CanonicalPolynomial &poly) {
    std::vector<std::pair<Monomial, ExactScalar>> ordered(poly.terms().begin(), poly.terms().end());
    // Highest degree first; within a degree, earlier generators first.
    std::sort(ordered.begin(), ordered.end(), [](const auto &a, const auto &b) {
        const int da = total_degree(a.first);
        const int db = total_degree(b.first);
        if (da != db) {
            return da > db;
        }
        return a.first > b.first;
    });

    std::string out;
    for (const auto &[m, c] : ordered) {
        const std::string mono = format_monomial(m);
        const auto pieces = pieces_of(c);
        if (pieces.size() == 1) {
            const std::string mag = piece_magnitude(pieces.front());
            std::string body = mag;
            if (!mono.empty()) {
                body = mag.empty() ? mono : mag + " " + mono;
            } else if (body.empty()) {
                body = "1";
            }
            append_signed(out, pieces.front().value < 0, body);
        } else {
            std::string body = "(" + format_scalar(c) + ")";
            if (!mono.empty()) {
                body += " " + mono;
            }
            append_signed(out, false, body);
        }
    }
    return out.empty() ? "0" : out;
}

CanonicalPolynomial parse_polynomial(std::string_view text) { return Parser(text).parse(); }

ExactScalar parse_scalar(std::string_view text) {
    const auto poly = parse_polynomial(text);
    if (poly.degree() > 0) {
        throw ParseError("expected a scalar expression, got an operator");
    }
    return poly.coefficient(Monomial{});
}

}  // namespace akmeter
