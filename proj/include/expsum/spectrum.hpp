#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "expsum/field.hpp"
#include "expsum/measure.hpp"
#include "expsum/rational.hpp"

namespace expsum {

/// Λ_δ = { ξ : |μ̂(ξ)| > p^{-δ} }, strict inequality. Coefficients closer
/// than `guard` to the threshold raise BoundaryAmbiguity instead of silently
/// flipping membership.
std::vector<std::int64_t> lambda_delta(const Measure& mu, const Rational& delta,
                                       double guard = 1e-9);

struct LambdaBoundsReport {
  Rational delta;
  std::int64_t lambda_size = 0;
  double upper_rhs = 0.0;  // p^{1+2δ}/|H|
  bool upper_ok = false;
  bool lower_applicable = false;  // some nonzero ξ lies in Λ_δ
  std::int64_t lower_rhs = 0;     // |H|
  bool lower_ok = true;
};

/// |Λ_δ| <= p^{1+2δ}/|H| always; |Λ_δ| >= |H| when a nonzero large
/// coefficient exists. Both decided in exact arithmetic.
LambdaBoundsReport check_lambda_bounds(const FieldContext& ctx,
                                       const SubgroupSpec& H,
                                       const Rational& delta);

struct SpectrumReport {
  Rational delta;
  std::vector<std::int64_t> lambda_set;
  std::int64_t k = 0;
  Rational eta;
  double l2_spectral_mass = 0.0;  // Σ_ξ ν̂_k(ξ)²
  Rational l2_spectral_mass_exact;
  std::vector<std::pair<std::int64_t, Rational>> iterations;  // (k_i, δ_i)
  std::int64_t clamped_coeffs = 0;
};

struct SelectOptions {
  std::int64_t k_cap = 64;
};

/// Walks k_0 = 4, k_{i+1} = floor(k_i²/η) + 1, δ_i = 1/k_{i+1}, stopping at
/// the first i <= M = 2(floor(1/η)+1) with
///
///   Σ_ξ ν̂_{k_i}(ξ)² <= p^η |Λ_{δ_i}|,
///
/// where the left side is evaluated exactly as p Σ_x ν_k(x)². The returned
/// (k, δ) satisfies δ < η/k² and the two-sided bracket
/// p^{-η}|Λ_δ| <= Σ ν̂_k² <= p^η|Λ_δ|.
SpectrumReport select_k_delta(const Measure& mu, const Rational& eta,
                              const SelectOptions& opts = {});

struct SmearReport {
  std::int64_t k = 0;
  double min_margin = 0.0;  // min over ξ of RHS - LHS
  std::int64_t argmin_xi = 0;
  std::int64_t clamped_coeffs = 0;
};

/// ν̂_k(ξ)^{4k} <= Σ_x ν̂_k(xξ)² ν_k(x) for every ξ, with exact mass weights
/// and double spectra. Throws InequalityViolated past a 1e-9 slack.
SmearReport check_smear_out(const FieldContext& ctx, const SubgroupSpec& H,
                            std::int64_t k);

struct StatMultReport {
  std::int64_t k = 0;
  Rational delta;
  Rational eta;
  double lhs = 0.0;          // p^{-10η} Σ_ξ ν̂_k(ξ)²
  double rhs = 0.0;          // Σ_{ξ,x} ν̂_k(ξ)² ν̂_k(xξ)² ν_k(x)
  double spectral_l2 = 0.0;  // Σ_ξ ν̂_k(ξ)²
  double margin = 0.0;
  bool trivial_upper_ok = false;  // rhs <= Σ_ξ ν̂_k(ξ)²
};

/// p^{-10η} Σ_ξ ν̂_k² <= Σ_{ξ,x} ν̂_k(ξ)² ν̂_k(xξ)² ν_k(x), with (k, δ)
/// chosen by select_k_delta, plus the trivial upper bound on the double sum.
StatMultReport check_statistical_mult(const FieldContext& ctx,
                                      const SubgroupSpec& H,
                                      const Rational& eta,
                                      const SelectOptions& opts = {});

struct ChainReport {
  std::int64_t k = 0;
  Rational delta;
  double total_l2 = 0.0;      // Σ_ξ ν̂_k²
  double lambda_l2 = 0.0;     // Σ_{ξ∈Λ_δ} ν̂_k²
  double lambda_high = 0.0;   // Σ_{ξ∈Λ_δ} ν̂_k^{4k+2}
  double link1_margin = 0.0;  // lambda_l2 - p^{-2η} total_l2
  double link2_margin = 0.0;  // p^{8k²δ} lambda_high - lambda_l2
  bool ok = false;
};

/// The two links p^{-2η} Σ_ξ ν̂_k² <= Σ_{Λ_δ} ν̂_k² <= p^{8k²δ} Σ_{Λ_δ} ν̂_k^{4k+2}.
ChainReport check_smearing_chain(const FieldContext& ctx, const SubgroupSpec& H,
                                 const Rational& eta,
                                 const SelectOptions& opts = {});

}  // namespace expsum
