#pragma once

#include <gmpxx.h>

#include <string>

namespace ia {

using Rational = mpq_class;

// "p/q", or "p" when the denominator is 1.
std::string format_fraction(const Rational& q);
// 12 significant digits, dot decimal separator regardless of locale.
std::string format_decimal(const Rational& q);
// Accepts "3", "-3/4", "0.125", "1e-3" is rejected. Throws InputError.
Rational parse_rational(const std::string& text);

}  // namespace ia
