#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace expsum {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

BigInt pow_big(const BigInt& base, std::uint64_t e);
Rational pow_rational(const Rational& base, std::uint64_t e);

double to_double(const Rational& r);

/// Parses "num/den" or plain "num" (also accepts decimal literals like "0.25").
Rational rational_from_string(const std::string& s);

/// Renders as "num/den" ("num" when the denominator is 1).
std::string rational_to_string(const Rational& r);

/// floor(r) for any rational.
BigInt floor_rational(const Rational& r);

/// ceil(r) for any rational.
BigInt ceil_rational(const Rational& r);

/// Exact sign of  a - p^e * b  for a, b >= 0 and rational exponent e.
/// Returns -1, 0 or +1. Decides thresholds like |Λ| <= p^{1+2δ}/|H| without
/// floating-point roundoff.
int cmp_scaled_power(const Rational& a, std::int64_t p, const Rational& e,
                     const Rational& b);

/// #{ t ∈ Z : 0 <= t < c * p^{-δ} }  computed exactly (δ > 0 rational).
std::int64_t count_below_power_bound(const Rational& c, std::int64_t p,
                                     const Rational& delta);

}  // namespace expsum
