#include <doctest.h>

#include <random>
#include <set>

#include "expsum/bgs.hpp"
#include "expsum/field.hpp"
#include "expsum/errors.hpp"

using namespace expsum;

namespace {

// independent set-arithmetic oracle
std::set<std::int64_t> sumset_oracle(const std::vector<std::int64_t>& A,
                                     const std::vector<std::int64_t>& B,
                                     std::int64_t n) {
  std::set<std::int64_t> out;
  for (auto a : A)
    for (auto b : B) out.insert(((a + b) % n + n) % n);
  return out;
}

std::set<std::int64_t> productset_oracle(const std::vector<std::int64_t>& A,
                                         const std::vector<std::int64_t>& B,
                                         std::int64_t p) {
  std::set<std::int64_t> out;
  for (auto a : A)
    for (auto b : B) out.insert(a * b % p);
  return out;
}

// re-verification independent of the extractor internals
void recheck(const BgsInstance& inst, const ExtractionResult& result) {
  REQUIRE(result.certified);
  const std::set<std::int64_t> a_set(inst.A.begin(), inst.A.end());
  for (auto a : result.A_prime) REQUIRE(a_set.count(a));
  const auto doubled = sumset_oracle(result.A_prime, result.A_prime, inst.n);
  REQUIRE(static_cast<std::int64_t>(doubled.size()) == result.doubling);
  const Rational bound =
      Rational(pow_big(BigInt(2), 37), 1) / pow_rational(inst.alpha, 8) * inst.N;
  REQUIRE(Rational(result.doubling, 1) <= bound);
  const Rational size_floor =
      pow_rational(inst.alpha, 4) / Rational(pow_big(BigInt(2), 15), 1) * inst.N;
  REQUIRE(Rational(static_cast<std::int64_t>(result.A_prime.size()), 1) >= size_floor);
}

}  // namespace

TEST_CASE("sumsets") {
  CHECK(sumset({0}, {0}, 101) == std::vector<std::int64_t>{0});
  CHECK(sumset({0, 1, 2}, {0, 1, 2}, 101) ==
        std::vector<std::int64_t>{0, 1, 2, 3, 4});
  // {1,2,4} + {1,2,4} mod 7 covers everything but 0
  CHECK(sumset({1, 2, 4}, {1, 2, 4}, 7) ==
        std::vector<std::int64_t>{1, 2, 3, 4, 5, 6});
}

TEST_CASE("product sets") {
  CHECK(productset({1}, {1}, 7) == std::vector<std::int64_t>{1});
  CHECK(productset({1, 2, 4}, {1, 2, 4}, 7) == std::vector<std::int64_t>{1, 2, 4});
  CHECK(productset({1, 2, 3}, {1, 2, 3}, 7) ==
        std::vector<std::int64_t>{1, 2, 3, 4, 6});
  CHECK_THROWS_AS(productset({0, 1}, {1}, 7), Error);
}

TEST_CASE("set operations match the oracle on random instances") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 100; ++i) {
    std::uniform_int_distribution<std::int64_t> prime_pick(0, 3);
    const std::int64_t p = std::vector<std::int64_t>{11, 31, 71, 101}[prime_pick(rng)];
    std::uniform_int_distribution<std::int64_t> size(1, 12);
    std::uniform_int_distribution<std::int64_t> elem(1, p - 1);
    std::set<std::int64_t> sa, sb;
    const auto na = std::min<std::int64_t>(size(rng), p - 1);
    const auto nb = std::min<std::int64_t>(size(rng), p - 1);
    while (static_cast<std::int64_t>(sa.size()) < na) sa.insert(elem(rng));
    while (static_cast<std::int64_t>(sb.size()) < nb) sb.insert(elem(rng));
    const std::vector<std::int64_t> A(sa.begin(), sa.end());
    const std::vector<std::int64_t> B(sb.begin(), sb.end());
    const auto s = sumset(A, B, p);
    const auto s_oracle = sumset_oracle(A, B, p);
    REQUIRE(std::set<std::int64_t>(s.begin(), s.end()) == s_oracle);
    REQUIRE(sumset(A, B, p) == sumset(B, A, p));
    const auto m = productset(A, B, p);
    REQUIRE(std::set<std::int64_t>(m.begin(), m.end()) == productset_oracle(A, B, p));
  }
}

TEST_CASE("subgroups are closed under the product set") {
  const auto ctx = make_field_context(31);
  for (std::int64_t m : divisors(30)) {
    const auto H = subgroup(ctx, m);
    CHECK(productset(H.elements, H.elements, 31) == H.elements);
  }
}

TEST_CASE("sum-product scores") {
  SUBCASE("subgroup {1,2,4} of F_7: 6 + 3 = 9, exponent 2") {
    const auto score = sum_product_score({1, 2, 4}, 7);
    CHECK(score.sum_size == 6);
    CHECK(score.prod_size == 3);
    CHECK(score.score == 9);
    REQUIRE(score.exponent.has_value());
    CHECK(*score.exponent == doctest::Approx(2.0).epsilon(1e-12));
  }
  SUBCASE("singleton score 2 with no exponent") {
    const auto score = sum_product_score({1}, 7);
    CHECK(score.score == 2);
    CHECK_FALSE(score.exponent.has_value());
  }
  SUBCASE("geometric progression {1,2,4,8,16} in F_101") {
    const auto score = sum_product_score({1, 2, 4, 8, 16}, 101);
    CHECK(score.prod_size == 9);
    CHECK(score.sum_size == 15);
    CHECK(static_cast<std::size_t>(score.sum_size) ==
          sumset_oracle({1, 2, 4, 8, 16}, {1, 2, 4, 8, 16}, 101).size());
  }
}

TEST_CASE("instance validation") {
  CHECK_THROWS_AS(BgsInstance::make(101, {1, 2}, {1}, {{1, 5}}, Rational(2), Rational(1, 2)),
                  Error);  // edge outside A×B
  CHECK_THROWS_AS(
      BgsInstance::make(101, {1, 2}, {1, 2}, {{1, 1}}, Rational(2), Rational(1)),
      Error);  // |G| = 1 < alpha N^2 = 4
  CHECK_THROWS_AS(
      BgsInstance::make(101, {1, 2, 3}, {1}, {{1, 1}}, Rational(2), Rational(1, 4)),
      Error);  // |A| = 3 > N = 2
}

TEST_CASE("extraction on the full graph is vacuously certified") {
  std::vector<std::int64_t> a(10), b(10);
  std::vector<std::pair<std::int64_t, std::int64_t>> g;
  for (int i = 0; i < 10; ++i) {
    a[static_cast<std::size_t>(i)] = i;
    b[static_cast<std::size_t>(i)] = i;
  }
  for (auto x : a)
    for (auto y : b) g.emplace_back(x, y);
  // S = {a+b} has 19 elements > N on the nose, so N = 19 with alpha scaled
  const Rational N(19);
  const Rational alpha = Rational(100) / (N * N);
  const auto inst = BgsInstance::make(101, a, b, g, N, alpha);
  const auto result = bgs_extract(inst);
  recheck(inst, result);
  CHECK(result.strategy == "vacuity");
}

TEST_CASE("small constants swamp condition ii") {
  // |A| = 4, alpha = 1/2: size floor 4/2^13 < 1, a single element certifies.
  // Band graph a+b <= 5 keeps S = {2,3,4,5} within N = 4.
  std::vector<std::int64_t> a{1, 2, 3, 4}, b{1, 2, 3, 4};
  std::vector<std::pair<std::int64_t, std::int64_t>> g;
  for (auto x : a)
    for (auto y : b)
      if (x + y <= 5) g.emplace_back(x, y);  // |G| = 10 >= (1/2)·16
  const auto inst = BgsInstance::make(101, a, b, g, Rational(4), Rational(1, 2));
  const auto result = bgs_extract(inst);
  recheck(inst, result);
  CHECK(static_cast<std::int64_t>(result.A_prime.size()) >= 1);
}

TEST_CASE("random dense bipartite graphs, extractor vs exhaustive oracle") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const std::int64_t N = 12;
    const std::int64_t n = 101 + 2 * trial;
    std::vector<std::int64_t> a(static_cast<std::size_t>(N)),
        b(static_cast<std::size_t>(N));
    for (std::int64_t i = 0; i < N; ++i) {
      a[static_cast<std::size_t>(i)] = i;
      b[static_cast<std::size_t>(i)] = i;
    }
    // band graph a+b < N keeps |S| <= N; subsample to |G| = ceil(N^2/4)
    std::vector<std::pair<std::int64_t, std::int64_t>> band;
    for (auto x : a)
      for (auto y : b)
        if (x + y < N) band.emplace_back(x, y);
    std::shuffle(band.begin(), band.end(), rng);
    const std::int64_t target = (N * N + 3) / 4;
    band.resize(static_cast<std::size_t>(target));
    const auto inst =
        BgsInstance::make(n, a, b, band, Rational(N), Rational(1, 4));
    const auto result = bgs_extract(inst);
    recheck(inst, result);
    const auto oracle = bgs_extract_exhaustive(inst);
    REQUIRE(oracle.has_value());
    recheck(inst, *oracle);
  }
}
