// Copyright 2026 The passalloc authors
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

#ifndef PASSALLOC_RATIONAL_HPP
#define PASSALLOC_RATIONAL_HPP

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace passalloc {

/// Exact rational number. Every quantity in the library (prices, payouts,
/// game values) is a `Rat`; no floating point enters any computation that
/// feeds an equality check.
using Rat = mpq_class;

/// Builds num/den in canonical (lowest-terms) form.
inline Rat make_rat(long num, long den = 1) {
  Rat q(num, den);
  q.canonicalize();
  return q;
}

namespace detail {
inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}
}  // namespace detail

/// Parses "7", "-3", "21/5" or a decimal literal such as "2.50" into an
/// exact rational. Decimal strings are scaled by powers of ten, never routed
/// through binary floating point. Returns std::nullopt on malformed input.
inline std::optional<Rat> parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '+' || body.front() == '-')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  if (body.empty()) return std::nullopt;

  Rat value;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    std::string_view num = body.substr(0, slash);
    std::string_view den = body.substr(slash + 1);
    if (!detail::all_digits(num) || !detail::all_digits(den)) return std::nullopt;
    mpz_class n(std::string(num), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0) return std::nullopt;
    value = Rat(n, d);
    value.canonicalize();
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    std::string_view whole = body.substr(0, dot);
    std::string_view frac = body.substr(dot + 1);
    if (whole.empty() && frac.empty()) return std::nullopt;
    if (!whole.empty() && !detail::all_digits(whole)) return std::nullopt;
    if (!frac.empty() && !detail::all_digits(frac)) return std::nullopt;
    if (frac.find('.') != std::string_view::npos) return std::nullopt;
    std::string digits = std::string(whole) + std::string(frac);
    if (digits.empty()) return std::nullopt;
    mpz_class n(digits, 10);
    mpz_class d;
    mpz_ui_pow_ui(d.get_mpz_t(), 10, static_cast<unsigned long>(frac.size()));
    value = Rat(n, d);
    value.canonicalize();
  } else {
    if (!detail::all_digits(body)) return std::nullopt;
    value = Rat(mpz_class(std::string(body), 10));
  }
  if (negative) value = -value;
  return value;
}

/// Lowest-terms rendering: "21/5", or just "5" when the denominator is one.
inline std::string to_fraction_string(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Decimal approximation with the given number of significant digits
/// (display only), e.g. 21/5 -> "4.2".
inline std::string to_decimal_string(const Rat& q, int significant_digits = 6) {
  mpf_class f(q, 256);
  std::string fmt = "%." + std::to_string(significant_digits) + "Fg";
  char buf[160];
  gmp_snprintf(buf, sizeof buf, fmt.c_str(), f.get_mpf_t());
  return buf;
}

}  // namespace passalloc

#endif  // PASSALLOC_RATIONAL_HPP
