#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "expsum/rational.hpp"

namespace expsum {

/// {a + b mod n : a ∈ A, b ∈ B}, sorted.
std::vector<std::int64_t> sumset(const std::vector<std::int64_t>& A,
                                 const std::vector<std::int64_t>& B,
                                 std::int64_t n);

/// {a b mod p : a ∈ A, b ∈ B}, sorted. Throws ZeroElement on 0 inputs.
std::vector<std::int64_t> productset(const std::vector<std::int64_t>& A,
                                     const std::vector<std::int64_t>& B,
                                     std::int64_t p);

struct SumProductScore {
  std::int64_t sum_size = 0;
  std::int64_t prod_size = 0;
  std::int64_t score = 0;                 // |A+A| + |A·A|
  std::optional<double> exponent;         // log_{|A|}(score), absent for |A| < 2
};

SumProductScore sum_product_score(const std::vector<std::int64_t>& A,
                                  std::int64_t p);

/// Popular-sums graph instance over Z/nZ: G ⊆ A×B with S = {a+b : (a,b) ∈ G},
/// |A|, |B|, |S| <= N and |G| >= α N². Validated at construction.
struct BgsInstance {
  std::int64_t n = 0;
  std::vector<std::int64_t> A;
  std::vector<std::int64_t> B;
  std::vector<std::pair<std::int64_t, std::int64_t>> G;
  Rational N;
  Rational alpha;

  static BgsInstance make(std::int64_t n, std::vector<std::int64_t> A,
                          std::vector<std::int64_t> B,
                          std::vector<std::pair<std::int64_t, std::int64_t>> G,
                          Rational N, Rational alpha);
};

struct ExtractionResult {
  std::vector<std::int64_t> A_prime;
  std::int64_t doubling = 0;  // |A'+A'| mod n
  bool cond_doubling = false; // |A'+A'| <= (2^37/α^8) N
  bool cond_size = false;     // |A'| >= (α^4/2^15) N
  bool certified = false;
  std::string strategy;       // "vacuity" | "greedy" | "exhaustive"
};

/// Finds A' ⊆ A with doubling bound (2^37/α^8)N and size at least
/// (α^4/2^15)N. Tries the vacuity shortcut, then greedy growth in descending
/// G-degree order, then exhaustive search for |A| <= 20; conditions are
/// re-verified by direct set arithmetic before returning.
ExtractionResult bgs_extract(const BgsInstance& instance);

/// Exhaustive subset oracle (first certified subset in mask order), for
/// cross-checking the extractor. Only sensible for small |A|.
std::optional<ExtractionResult> bgs_extract_exhaustive(const BgsInstance& instance);

}  // namespace expsum
