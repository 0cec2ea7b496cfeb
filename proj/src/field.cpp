#include "expsum/field.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <numeric>
#include <string>

namespace expsum {

namespace {

std::int64_t pow_mod(std::int64_t base, std::int64_t e, std::int64_t p) {
  std::int64_t result = 1;
  base %= p;
  if (base < 0) base += p;
  while (e > 0) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return result;
}

std::vector<std::int64_t> prime_factors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::int64_t least_primitive_root(std::int64_t p) {
  const auto factors = prime_factors(p - 1);
  for (std::int64_t g = 2; g < p; ++g) {
    bool ok = true;
    for (std::int64_t q : factors) {
      if (pow_mod(g, (p - 1) / q, p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  fail(ErrorCode::NotPrime, "no primitive root found for " + std::to_string(p));
}

}  // namespace

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::int64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

std::int64_t default_p_cap() {
  if (const char* env = std::getenv("EXPSUM_P_CAP")) {
    char* end = nullptr;
    const long long v = std::strtoll(env, &end, 10);
    if (end && *end == '\0' && v >= 3) return v;
  }
  return 200000;
}

FieldContext make_field_context(std::int64_t p, std::int64_t p_cap) {
  if (p < 3) fail(ErrorCode::InvalidArgument, "p must be >= 3, got " + std::to_string(p));
  if (p > p_cap) {
    fail(ErrorCode::TooLarge, "p = " + std::to_string(p) + " exceeds cap " +
                                  std::to_string(p_cap));
  }
  if (!is_prime(p)) fail(ErrorCode::NotPrime, std::to_string(p) + " is composite");

  FieldContext ctx;
  ctx.p = p;
  ctx.g = least_primitive_root(p);
  ctx.log_table.assign(static_cast<std::size_t>(p), -1);
  ctx.pow_table.resize(static_cast<std::size_t>(p - 1));
  std::int64_t x = 1;
  for (std::int64_t t = 0; t < p - 1; ++t) {
    ctx.pow_table[static_cast<std::size_t>(t)] = static_cast<std::int32_t>(x);
    ctx.log_table[static_cast<std::size_t>(x)] = static_cast<std::int32_t>(t);
    x = x * ctx.g % p;
  }
  ctx.psi_table.resize(static_cast<std::size_t>(p));
  for (std::int64_t j = 0; j < p; ++j) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) /
                         static_cast<double>(p);
    ctx.psi_table[static_cast<std::size_t>(j)] = std::polar(1.0, angle);
  }
  return ctx;
}

SubgroupSpec subgroup(const FieldContext& ctx, std::int64_t m) {
  if (m < 1) fail(ErrorCode::InvalidArgument, "index must be >= 1");
  if ((ctx.p - 1) % m != 0) {
    fail(ErrorCode::IndexNotDividing,
         "index " + std::to_string(m) + " does not divide " + std::to_string(ctx.p - 1));
  }
  SubgroupSpec spec;
  spec.kind = SubgroupKind::FullSubgroup;
  spec.index = m;
  const std::int64_t order = (ctx.p - 1) / m;
  spec.elements.reserve(static_cast<std::size_t>(order));
  for (std::int64_t t = 0; t < order; ++t) {
    spec.elements.push_back(ctx.pow_table[static_cast<std::size_t>(t * m)]);
  }
  std::sort(spec.elements.begin(), spec.elements.end());
  return spec;
}

SubgroupSpec segment(const FieldContext& ctx, std::int64_t g0, std::int64_t T) {
  g0 = ((g0 % ctx.p) + ctx.p) % ctx.p;
  if (g0 == 0) fail(ErrorCode::ZeroArgument, "segment generator must be nonzero");
  if (T < 1) fail(ErrorCode::EmptySegment, "segment length " + std::to_string(T));
  const std::int64_t ord = element_order(ctx, g0);
  if (T > ord) {
    fail(ErrorCode::InvalidArgument,
         "segment length " + std::to_string(T) + " exceeds ord(g0) = " + std::to_string(ord));
  }
  SubgroupSpec spec;
  spec.kind = SubgroupKind::Segment;
  spec.generator = g0;
  spec.length = T;
  spec.elements.reserve(static_cast<std::size_t>(T));
  std::int64_t x = 1;
  for (std::int64_t t = 0; t < T; ++t) {
    spec.elements.push_back(x);
    x = x * g0 % ctx.p;
  }
  std::sort(spec.elements.begin(), spec.elements.end());
  return spec;
}

std::int64_t discrete_log(const FieldContext& ctx, std::int64_t s) {
  s = ((s % ctx.p) + ctx.p) % ctx.p;
  if (s == 0) fail(ErrorCode::ZeroArgument, "discrete log of 0");
  return ctx.log_table[static_cast<std::size_t>(s)];
}

std::int64_t element_order(const FieldContext& ctx, std::int64_t x) {
  const std::int64_t t = discrete_log(ctx, x);
  if (t == 0) return 1;
  return (ctx.p - 1) / std::gcd(ctx.p - 1, t);
}

std::vector<std::int64_t> primes_in_range(std::int64_t lo, std::int64_t hi) {
  std::vector<std::int64_t> out;
  for (std::int64_t n = std::max<std::int64_t>(lo, 2); n <= hi; ++n) {
    if (is_prime(n)) out.push_back(n);
  }
  return out;
}

std::vector<std::int64_t> divisors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      if (d != n / d) out.push_back(n / d);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace expsum
