#include "expsum/rational.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include "expsum/errors.hpp"

namespace expsum {

BigInt pow_big(const BigInt& base, std::uint64_t e) {
  BigInt result = 1;
  BigInt b = base;
  while (e > 0) {
    if (e & 1) result *= b;
    e >>= 1;
    if (e > 0) b *= b;
  }
  return result;
}

Rational pow_rational(const Rational& base, std::uint64_t e) {
  return Rational(pow_big(boost::multiprecision::numerator(base), e),
                  pow_big(boost::multiprecision::denominator(base), e));
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

Rational rational_from_string(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash != std::string::npos) {
      BigInt num(s.substr(0, slash));
      BigInt den(s.substr(slash + 1));
      if (den == 0) fail(ErrorCode::InvalidArgument, "zero denominator: " + s);
      return Rational(num, den);
    }
    auto dot = s.find('.');
    if (dot != std::string::npos) {
      // decimal literal:  a.b  ->  (a*10^k + b) / 10^k
      std::string digits = s.substr(0, dot) + s.substr(dot + 1);
      std::uint64_t k = s.size() - dot - 1;
      bool neg = !digits.empty() && digits[0] == '-';
      if (neg) digits = digits.substr(1);
      if (digits.empty()) fail(ErrorCode::InvalidArgument, "bad rational: " + s);
      BigInt num(digits);
      if (neg) num = -num;
      return Rational(num, pow_big(BigInt(10), k));
    }
    return Rational(BigInt(s));
  } catch (const std::exception&) {
    fail(ErrorCode::InvalidArgument, "cannot parse rational: " + s);
  }
}

std::string rational_to_string(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

BigInt floor_rational(const Rational& r) {
  BigInt num = boost::multiprecision::numerator(r);
  BigInt den = boost::multiprecision::denominator(r);
  BigInt q = num / den;
  if (num < 0 && q * den != num) --q;
  return q;
}

BigInt ceil_rational(const Rational& r) {
  BigInt num = boost::multiprecision::numerator(r);
  BigInt den = boost::multiprecision::denominator(r);
  BigInt q = num / den;
  if (num > 0 && q * den != num) ++q;
  return q;
}

int cmp_scaled_power(const Rational& a, std::int64_t p, const Rational& e,
                     const Rational& b) {
  if (a < 0 || b < 0) fail(ErrorCode::InvalidArgument, "cmp_scaled_power needs a,b >= 0");
  if (p < 2) fail(ErrorCode::InvalidArgument, "cmp_scaled_power needs p >= 2");
  const BigInt r = boost::multiprecision::numerator(e);
  const BigInt qb = boost::multiprecision::denominator(e);
  const auto q = qb.convert_to<std::uint64_t>();
  // a vs p^{r/q} b  <=>  a^q vs p^r b^q  (both sides nonnegative)
  Rational lhs = pow_rational(a, q);
  Rational rhs = pow_rational(b, q);
  if (r >= 0) {
    rhs *= Rational(pow_big(BigInt(p), r.convert_to<std::uint64_t>()), 1);
  } else {
    lhs *= Rational(pow_big(BigInt(p), (-r).convert_to<std::uint64_t>()), 1);
  }
  if (lhs < rhs) return -1;
  if (lhs > rhs) return 1;
  return 0;
}

std::int64_t count_below_power_bound(const Rational& c, std::int64_t p,
                                     const Rational& delta) {
  if (delta <= 0) fail(ErrorCode::InvalidArgument, "delta must be positive");
  if (c <= 0) return 0;
  // t < c p^{-δ}  <=>  t - p^{-δ} c < 0
  std::int64_t t = 0;
  while (cmp_scaled_power(Rational(t), p, -delta, c) < 0) ++t;
  return t;
}

}  // namespace expsum
