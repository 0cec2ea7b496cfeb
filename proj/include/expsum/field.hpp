#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "expsum/errors.hpp"

namespace expsum {

/// Prime-field workspace: modulus p, least primitive root g, full discrete-log
/// table for F_p^x, and the p-th roots of unity e^{2πij/p}.
/// Immutable after construction; safe to share across threads.
struct FieldContext {
  std::int64_t p = 0;
  std::int64_t g = 0;
  std::vector<std::int32_t> log_table;  // size p; log_table[0] == -1
  std::vector<std::int32_t> pow_table;  // size p-1; pow_table[t] == g^t mod p
  std::vector<std::complex<double>> psi_table;  // psi_table[j] == e^{2πij/p}

  std::int64_t mul(std::int64_t a, std::int64_t b) const {
    return (a % p) * (b % p) % p;
  }
  std::int64_t pow_g(std::int64_t t) const {
    return pow_table[static_cast<std::size_t>(((t % (p - 1)) + (p - 1)) % (p - 1))];
  }
};

bool is_prime(std::int64_t n);

/// Prime cap applied by make_field_context: EXPSUM_P_CAP env var or 200000.
std::int64_t default_p_cap();

/// Builds the context for an odd prime p <= cap.
/// Throws NotPrime for composite p, TooLarge beyond the cap.
FieldContext make_field_context(std::int64_t p, std::int64_t p_cap = default_p_cap());

enum class SubgroupKind { FullSubgroup, Segment };

/// Either the multiplicative subgroup of index m, or a geometric segment
/// {g0^t : 0 <= t < T}. Elements are sorted and distinct.
struct SubgroupSpec {
  SubgroupKind kind = SubgroupKind::FullSubgroup;
  std::int64_t index = 0;      // full subgroup: m with |H| = (p-1)/m
  std::int64_t generator = 0;  // segment: g0
  std::int64_t length = 0;     // segment: T
  std::vector<std::int64_t> elements;

  std::int64_t order() const { return static_cast<std::int64_t>(elements.size()); }
};

/// The unique multiplicative subgroup of index m: {x : x^{(p-1)/m} = 1}.
/// Throws IndexNotDividing when m does not divide p-1.
SubgroupSpec subgroup(const FieldContext& ctx, std::int64_t m);

/// The segment {g0^t : 0 <= t < T}; requires T <= ord(g0) so elements stay
/// distinct. Throws EmptySegment for T < 1.
SubgroupSpec segment(const FieldContext& ctx, std::int64_t g0, std::int64_t T);

/// Smallest t >= 0 with g^t = s (mod p). Throws ZeroArgument for s = 0.
std::int64_t discrete_log(const FieldContext& ctx, std::int64_t s);

/// Multiplicative order of x in F_p^x.
std::int64_t element_order(const FieldContext& ctx, std::int64_t x);

/// Primes in [lo, hi], ascending.
std::vector<std::int64_t> primes_in_range(std::int64_t lo, std::int64_t hi);

/// Sorted divisors of n.
std::vector<std::int64_t> divisors(std::int64_t n);

}  // namespace expsum
