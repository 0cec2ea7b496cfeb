#include <doctest.h>

#include <algorithm>
#include <set>

#include "expsum/field.hpp"

using namespace expsum;

namespace {

// independent oracle: smallest g whose powers enumerate all of F_p^x
std::int64_t primitive_root_oracle(std::int64_t p) {
  for (std::int64_t g = 2; g < p; ++g) {
    std::set<std::int64_t> seen;
    std::int64_t x = 1;
    for (std::int64_t t = 0; t < p - 1; ++t) {
      seen.insert(x);
      x = x * g % p;
    }
    if (static_cast<std::int64_t>(seen.size()) == p - 1) return g;
  }
  return -1;
}

}  // namespace

TEST_CASE("context takes the least primitive root") {
  CHECK(make_field_context(7).g == 3);
  CHECK(make_field_context(7).g == primitive_root_oracle(7));
  CHECK(make_field_context(11).g == 2);
  CHECK(make_field_context(11).g == primitive_root_oracle(11));
  CHECK(make_field_context(101).g == primitive_root_oracle(101));
}

TEST_CASE("context rejects bad moduli") {
  CHECK_THROWS_WITH_AS(make_field_context(9), doctest::Contains("composite"), Error);
  try {
    make_field_context(9);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotPrime);
  }
  CHECK_THROWS_AS(make_field_context(1), Error);
  CHECK_THROWS_AS(make_field_context(200003, 200000), Error);
  try {
    make_field_context(200003, 200000);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TooLarge);
  }
}

TEST_CASE("discrete logs match the power table") {
  const auto ctx = make_field_context(7);
  CHECK(discrete_log(ctx, 1) == 0);
  CHECK(discrete_log(ctx, 3) == 1);
  CHECK(discrete_log(ctx, 6) == 3);  // 3^3 = 27 = 6 (mod 7)
  CHECK_THROWS_AS(discrete_log(ctx, 0), Error);
  CHECK_THROWS_AS(discrete_log(ctx, 7), Error);
}

TEST_CASE("subgroups of F_7") {
  const auto ctx = make_field_context(7);
  CHECK(subgroup(ctx, 1).elements == std::vector<std::int64_t>{1, 2, 3, 4, 5, 6});
  CHECK(subgroup(ctx, 2).elements == std::vector<std::int64_t>{1, 2, 4});
  CHECK(subgroup(ctx, 3).elements == std::vector<std::int64_t>{1, 6});
  CHECK_THROWS_AS(subgroup(ctx, 4), Error);
  try {
    subgroup(ctx, 4);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IndexNotDividing);
  }
}

TEST_CASE("segments enumerate powers and stay within the order") {
  const auto ctx = make_field_context(7);
  const auto seg = segment(ctx, 2, 3);  // {1, 2, 4}; ord(2) = 3 mod 7
  CHECK(seg.elements == std::vector<std::int64_t>{1, 2, 4});
  CHECK(seg.kind == SubgroupKind::Segment);
  CHECK_THROWS_AS(segment(ctx, 2, 4), Error);
  CHECK_THROWS_AS(segment(ctx, 0, 1), Error);
  CHECK_THROWS_AS(segment(ctx, 3, 0), Error);
}

TEST_CASE("psi table lives on the unit circle and sums to zero") {
  const auto ctx = make_field_context(101);
  std::complex<double> total{0.0, 0.0};
  for (const auto& v : ctx.psi_table) {
    CHECK(std::abs(std::abs(v) - 1.0) < 1e-12);
    total += v;
  }
  CHECK(std::abs(total) < 1e-9 * static_cast<double>(ctx.p));
}

TEST_CASE("subgroup structure across all primes up to 1000") {
  for (std::int64_t p : primes_in_range(3, 1000)) {
    const auto ctx = make_field_context(p);
    // log and power tables invert each other
    bool tables_invert = true;
    for (std::int64_t t = 0; t < p - 1 && tables_invert; ++t) {
      tables_invert = discrete_log(ctx, ctx.pow_g(t)) == t;
    }
    for (std::int64_t x = 1; x < p && tables_invert; ++x) {
      tables_invert = ctx.pow_g(discrete_log(ctx, x)) == x;
    }
    REQUIRE_MESSAGE(tables_invert, "p = ", p);
    for (std::int64_t m : divisors(p - 1)) {
      const auto H = subgroup(ctx, m);
      REQUIRE(H.order() * m == p - 1);
      std::vector<char> member(static_cast<std::size_t>(p), 0);
      for (std::int64_t x : H.elements) member[static_cast<std::size_t>(x)] = 1;
      bool closed = true;
      for (std::int64_t a : H.elements) {
        for (std::int64_t b : H.elements) {
          closed &= member[static_cast<std::size_t>(a * b % p)] != 0;
        }
      }
      REQUIRE_MESSAGE(closed, "p = ", p, ", m = ", m);
    }
  }
}

TEST_CASE("element orders divide p-1") {
  const auto ctx = make_field_context(31);
  for (std::int64_t x = 1; x < 31; ++x) {
    const auto ord = element_order(ctx, x);
    CHECK((31 - 1) % ord == 0);
    std::int64_t acc = 1;
    for (std::int64_t i = 0; i < ord; ++i) acc = acc * x % 31;
    CHECK(acc == 1);
  }
}
