// Copyright 2026 The crnt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace crnt {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

// Exact value of the binary double.
Rational rational_from_double(double v);

// Parses a decimal literal such as "1.5", "-2", "3e-4" exactly.
// Throws std::invalid_argument on malformed input.
Rational rational_from_decimal(std::string_view text);

// Shortest decimal that round-trips the double, read back exactly.
Rational rational_from_shortest(double v);

double to_double(const Rational& r);

inline bool is_zero(const Rational& r) { return r.is_zero(); }

// 17 significant digits, integers printed without exponent or point.
std::string format_double(double v);

}  // namespace crnt
