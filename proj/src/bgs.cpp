#include "expsum/bgs.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "expsum/errors.hpp"

namespace expsum {

namespace {

std::int64_t norm_mod(std::int64_t x, std::int64_t n) { return ((x % n) + n) % n; }

Rational doubling_bound(const BgsInstance& inst) {
  // (2^37 / α^8) N
  return Rational(pow_big(BigInt(2), 37), 1) / pow_rational(inst.alpha, 8) * inst.N;
}

Rational size_floor(const BgsInstance& inst) {
  // (α^4 / 2^15) N
  return pow_rational(inst.alpha, 4) / Rational(pow_big(BigInt(2), 15), 1) * inst.N;
}

std::int64_t doubling_of(const std::vector<std::int64_t>& s, std::int64_t n) {
  return static_cast<std::int64_t>(sumset(s, s, n).size());
}

// Elements of A ordered by G-degree descending, ties by smaller element.
std::vector<std::int64_t> degree_order(const BgsInstance& inst) {
  std::map<std::int64_t, std::int64_t> degree;
  for (std::int64_t a : inst.A) degree[a] = 0;
  for (const auto& [a, b] : inst.G) ++degree[a];
  std::vector<std::int64_t> order = inst.A;
  std::sort(order.begin(), order.end(), [&](std::int64_t x, std::int64_t y) {
    if (degree[x] != degree[y]) return degree[x] > degree[y];
    return x < y;
  });
  return order;
}

ExtractionResult certify(const BgsInstance& inst, std::vector<std::int64_t> a_prime,
                         const char* strategy) {
  std::sort(a_prime.begin(), a_prime.end());
  ExtractionResult result;
  result.doubling = doubling_of(a_prime, inst.n);
  result.cond_doubling =
      Rational(result.doubling, 1) <= doubling_bound(inst);
  result.cond_size =
      Rational(static_cast<std::int64_t>(a_prime.size()), 1) >= size_floor(inst);
  result.certified = result.cond_doubling && result.cond_size;
  result.A_prime = std::move(a_prime);
  result.strategy = strategy;
  return result;
}

}  // namespace

std::vector<std::int64_t> sumset(const std::vector<std::int64_t>& A,
                                 const std::vector<std::int64_t>& B,
                                 std::int64_t n) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "modulus must be positive");
  std::vector<char> hit(static_cast<std::size_t>(n), 0);
  for (std::int64_t a : A) {
    for (std::int64_t b : B) hit[static_cast<std::size_t>(norm_mod(a + b, n))] = 1;
  }
  std::vector<std::int64_t> out;
  for (std::int64_t x = 0; x < n; ++x) {
    if (hit[static_cast<std::size_t>(x)]) out.push_back(x);
  }
  return out;
}

std::vector<std::int64_t> productset(const std::vector<std::int64_t>& A,
                                     const std::vector<std::int64_t>& B,
                                     std::int64_t p) {
  if (p < 2) fail(ErrorCode::InvalidArgument, "modulus must be >= 2");
  std::vector<char> hit(static_cast<std::size_t>(p), 0);
  for (std::int64_t a : A) {
    if (norm_mod(a, p) == 0) fail(ErrorCode::ZeroElement, "zero element in product set");
    for (std::int64_t b : B) {
      if (norm_mod(b, p) == 0) fail(ErrorCode::ZeroElement, "zero element in product set");
      hit[static_cast<std::size_t>(norm_mod(a, p) * norm_mod(b, p) % p)] = 1;
    }
  }
  std::vector<std::int64_t> out;
  for (std::int64_t x = 0; x < p; ++x) {
    if (hit[static_cast<std::size_t>(x)]) out.push_back(x);
  }
  return out;
}

SumProductScore sum_product_score(const std::vector<std::int64_t>& A,
                                  std::int64_t p) {
  if (A.empty()) fail(ErrorCode::EmptySupport, "sum_product_score: empty set");
  SumProductScore score;
  score.sum_size = static_cast<std::int64_t>(sumset(A, A, p).size());
  score.prod_size = static_cast<std::int64_t>(productset(A, A, p).size());
  score.score = score.sum_size + score.prod_size;
  if (A.size() >= 2) {
    score.exponent = std::log(static_cast<double>(score.score)) /
                     std::log(static_cast<double>(A.size()));
  }
  return score;
}

BgsInstance BgsInstance::make(std::int64_t n, std::vector<std::int64_t> A,
                              std::vector<std::int64_t> B,
                              std::vector<std::pair<std::int64_t, std::int64_t>> G,
                              Rational N, Rational alpha) {
  if (n < 1) fail(ErrorCode::InvalidInstance, "modulus must be positive");
  if (alpha <= 0 || alpha > 1) fail(ErrorCode::InvalidInstance, "alpha must lie in (0,1]");
  std::sort(A.begin(), A.end());
  std::sort(B.begin(), B.end());
  A.erase(std::unique(A.begin(), A.end()), A.end());
  B.erase(std::unique(B.begin(), B.end()), B.end());
  const std::set<std::int64_t> a_set(A.begin(), A.end());
  const std::set<std::int64_t> b_set(B.begin(), B.end());
  std::set<std::int64_t> s_set;
  std::sort(G.begin(), G.end());
  G.erase(std::unique(G.begin(), G.end()), G.end());
  for (const auto& [a, b] : G) {
    if (!a_set.count(a) || !b_set.count(b)) {
      fail(ErrorCode::InvalidInstance, "graph edge outside A x B");
    }
    s_set.insert(norm_mod(a + b, n));
  }
  if (Rational(static_cast<std::int64_t>(A.size()), 1) > N ||
      Rational(static_cast<std::int64_t>(B.size()), 1) > N ||
      Rational(static_cast<std::int64_t>(s_set.size()), 1) > N) {
    fail(ErrorCode::InvalidInstance, "|A|, |B| or |S| exceeds N");
  }
  if (Rational(static_cast<std::int64_t>(G.size()), 1) < alpha * N * N) {
    fail(ErrorCode::InvalidInstance, "|G| < alpha N^2");
  }
  BgsInstance inst;
  inst.n = n;
  inst.A = std::move(A);
  inst.B = std::move(B);
  inst.G = std::move(G);
  inst.N = std::move(N);
  inst.alpha = std::move(alpha);
  return inst;
}

ExtractionResult bgs_extract(const BgsInstance& inst) {
  const Rational bound = doubling_bound(inst);
  const BigInt s_min_big = ceil_rational(size_floor(inst));
  const std::int64_t s_min =
      std::max<std::int64_t>(1, s_min_big.convert_to<std::int64_t>());
  const auto ordered = degree_order(inst);
  const std::int64_t a_size = static_cast<std::int64_t>(inst.A.size());

  // Vacuity shortcut: when the doubling bound exceeds the largest possible
  // doubling of any subset of A, condition i) cannot fail.
  const Rational max_doubling =
      std::min(Rational(inst.n, 1), Rational(a_size * (a_size + 1) / 2, 1));
  if (bound >= max_doubling && s_min <= a_size) {
    std::vector<std::int64_t> pick(ordered.begin(),
                                   ordered.begin() + static_cast<std::size_t>(s_min));
    auto result = certify(inst, std::move(pick), "vacuity");
    if (result.certified) return result;
  }

  // Greedy growth by popularity; keep an element only if the doubling bound
  // still holds.
  std::vector<std::int64_t> greedy;
  for (std::int64_t a : ordered) {
    greedy.push_back(a);
    if (Rational(doubling_of(greedy, inst.n), 1) > bound) greedy.pop_back();
  }
  if (static_cast<std::int64_t>(greedy.size()) >= s_min) {
    auto result = certify(inst, std::move(greedy), "greedy");
    if (result.certified) return result;
  }

  if (a_size <= 20) {
    if (auto result = bgs_extract_exhaustive(inst)) return *result;
  }
  fail(ErrorCode::ExtractionFailed,
       "no certified subset found (|A| = " + std::to_string(a_size) + ")");
}

std::optional<ExtractionResult> bgs_extract_exhaustive(const BgsInstance& inst) {
  const std::int64_t a_size = static_cast<std::int64_t>(inst.A.size());
  if (a_size > 24) fail(ErrorCode::InvalidArgument, "exhaustive search needs |A| <= 24");
  std::vector<std::int64_t> sorted_a = inst.A;
  std::sort(sorted_a.begin(), sorted_a.end());
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << a_size); ++mask) {
    std::vector<std::int64_t> subset;
    for (std::int64_t i = 0; i < a_size; ++i) {
      if (mask & (std::uint64_t{1} << i)) subset.push_back(sorted_a[static_cast<std::size_t>(i)]);
    }
    auto result = certify(inst, std::move(subset), "exhaustive");
    if (result.certified) return result;
  }
  return std::nullopt;
}

}  // namespace expsum
