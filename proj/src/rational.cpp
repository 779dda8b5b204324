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

#include "crnt/rational.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace crnt {

Rational rational_from_double(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("non-finite value");
  return Rational(v);
}

Rational rational_from_decimal(std::string_view text) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  std::string digits;
  int scale = 0;
  bool seen_digit = false;
  bool seen_point = false;
  for (; pos < text.size(); ++pos) {
    char ch = text[pos];
    if (ch >= '0' && ch <= '9') {
      digits.push_back(ch);
      seen_digit = true;
      if (seen_point) ++scale;
    } else if (ch == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) throw std::invalid_argument("malformed number");
  long exponent = 0;
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    std::string_view rest = text.substr(pos);
    if (!rest.empty() && rest.front() == '+') rest.remove_prefix(1);
    auto [end, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), exponent);
    if (ec != std::errc() || end == rest.data()) {
      throw std::invalid_argument("malformed exponent");
    }
    pos = text.size() - static_cast<std::size_t>(rest.data() + rest.size() - end);
  }
  if (pos != text.size()) throw std::invalid_argument("malformed number");
  if (exponent > 4000 || exponent < -4000) {
    throw std::invalid_argument("exponent out of range");
  }
  const std::size_t nz = digits.find_first_not_of('0');
  digits = nz == std::string::npos ? "0" : digits.substr(nz);
  Integer num(digits);
  long shift = exponent - scale;
  Integer ten_pow = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(std::labs(shift)));
  Rational r = shift >= 0 ? Rational(num * ten_pow) : Rational(num, ten_pow);
  return negative ? Rational(-r) : r;
}

Rational rational_from_shortest(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("non-finite value");
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw std::invalid_argument("cannot format value");
  return rational_from_decimal(std::string_view(buf, static_cast<std::size_t>(end - buf)));
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

std::string format_double(double v) {
  if (v == 0.0) return "0";
  if (std::isfinite(v) && std::fabs(v) < 1e15 && v == std::floor(v)) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.0f", v);
    return buf;
  }
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace crnt
