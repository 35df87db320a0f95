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

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace sheafctx {

/// Exact arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator.
using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

/// Parses "p/q" or an integer string. Throws ParseError on malformed input or
/// a zero denominator.
Rational parse_rational(std::string_view text);

/// "p/q", or just "p" when the denominator is 1.
std::string to_string(const Rational &value);

/// Exact value of a finite double.
Rational exact_from_double(double value);

/// Closest rational to `value` whose denominator does not exceed
/// `max_denominator` (continued-fraction best approximation).
Rational limit_denominator(const Rational &value, const BigInt &max_denominator);

double to_double(const Rational &value);

}  // namespace sheafctx
