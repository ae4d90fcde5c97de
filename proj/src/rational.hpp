#ifndef FLPART_RATIONAL_HPP
#define FLPART_RATIONAL_HPP

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace flpart {

// All game arithmetic is exact. Equilibrium conditions compare rationals at
// boundaries like delta == 2a/(nk); floating point would misclassify them.
using Rational = mpq_class;

// Accepts decimal strings ("0.632", "-3", "+.5") and fraction strings
// ("79/10", "-3/4" with a positive denominator). Anything else throws
// Error(Parse). Values are never rounded.
Rational parse_rational(std::string_view text);

// Canonical form: "p" when the denominator is 1, otherwise "p/q" with q > 0
// and gcd(p, q) == 1. parse_rational round-trips this exactly.
std::string rational_str(const Rational& value);

// Fixed-point decimal with `digits` fractional digits, rounded half away
// from zero. Deterministic, for display and CSV only.
std::string rational_decimal(const Rational& value, int digits);

// Exact grid point lo + index * (hi - lo) / (steps - 1); steps == 1 yields lo.
Rational grid_point(const Rational& lo, const Rational& hi, int steps, int index);

}  // namespace flpart

#endif  // FLPART_RATIONAL_HPP
