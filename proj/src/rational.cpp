// Copyright 2026 The sheafctx Authors
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

#include "sheafctx/rational.hpp"

#include <cctype>
#include <cmath>

#include "sheafctx/errors.hpp"

namespace sheafctx {

namespace {

BigInt parse_integer(std::string_view text, std::string_view whole) {
    std::size_t pos = 0;
    bool negative = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        negative = text[pos] == '-';
        ++pos;
    }
    if (pos == text.size()) {
        throw ParseError("malformed rational '" + std::string(whole) + "'");
    }
    for (std::size_t i = pos; i < text.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
            throw ParseError("malformed rational '" + std::string(whole) + "'");
        }
    }
    BigInt value(std::string(text.substr(pos)));
    return negative ? BigInt(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return Rational(parse_integer(text, text));
    }
    BigInt num = parse_integer(text.substr(0, slash), text);
    std::string_view den_text = text.substr(slash + 1);
    if (!den_text.empty() && (den_text.front() == '+' || den_text.front() == '-')) {
        throw ParseError("malformed rational '" + std::string(text) + "'");
    }
    BigInt den = parse_integer(den_text, text);
    if (den == 0) {
        throw ParseError("zero denominator in '" + std::string(text) + "'");
    }
    return Rational(num, den);
}

std::string to_string(const Rational &value) {
    if (boost::multiprecision::denominator(value) == 1) {
        return boost::multiprecision::numerator(value).str();
    }
    return value.str();
}

Rational exact_from_double(double value) {
    if (!std::isfinite(value)) {
        throw DomainError("cannot convert a non-finite double to a rational");
    }
    int exponent = 0;
    double mantissa = std::frexp(value, &exponent);
    // 53 significant bits make the scaled mantissa an exact integer.
    auto scaled = static_cast<std::int64_t>(std::ldexp(mantissa, 53));
    exponent -= 53;
    Rational result{BigInt(scaled)};
    if (exponent > 0) {
        result *= Rational(BigInt(1) << exponent);
    } else if (exponent < 0) {
        result /= Rational(BigInt(1) << -exponent);
    }
    return result;
}

Rational limit_denominator(const Rational &value, const BigInt &max_denominator) {
    if (max_denominator < 1) {
        throw DomainError("max_denominator must be at least 1");
    }
    BigInt n = boost::multiprecision::numerator(value);
    BigInt d = boost::multiprecision::denominator(value);
    if (d <= max_denominator) {
        return value;
    }
    BigInt p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    while (true) {
        BigInt a = n / d;
        if (n < 0 && a * d != n) a -= 1;  // floor division
        BigInt q2 = q0 + a * q1;
        if (q2 > max_denominator) break;
        BigInt p2 = p0 + a * p1;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        BigInt rem = n - a * d;
        n = d;
        d = rem;
    }
    BigInt k = (max_denominator - q0) / q1;
    Rational bound1(p0 + k * p1, q0 + k * q1);
    Rational bound2(p1, q1);
    using boost::multiprecision::abs;
    return abs(bound2 - value) <= abs(bound1 - value) ? bound2 : bound1;
}

double to_double(const Rational &value) { return value.convert_to<double>(); }

}  // namespace sheafctx
