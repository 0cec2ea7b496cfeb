#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "expsum/field.hpp"
#include "expsum/rational.hpp"
#include "expsum/spectrum.hpp"

namespace expsum {

struct ExpSumResult {
  std::int64_t xi = 0;
  std::complex<double> value;  // Σ_{x∈H} e^{2πi xξ/p}
  double magnitude = 0.0;
  double normalized = 0.0;     // magnitude / |H|
};

/// Direct summation over the elements of H in ascending order.
ExpSumResult exp_sum(const FieldContext& ctx, const SubgroupSpec& H,
                     std::int64_t xi);

struct EmpiricalBound {
  std::int64_t p = 0;
  std::int64_t subgroup_order = 0;
  double max_nontrivial = 0.0;  // max_{ξ≠0} |μ̂_H(ξ)|
  std::int64_t argmax_xi = 0;   // smallest ξ attaining the max
  double beta_emp = 0.0;        // -log_p(max_nontrivial)
};

/// Scans every nonzero twist; ties broken by the smallest ξ.
EmpiricalBound max_nontrivial_fourier(const FieldContext& ctx,
                                      const SubgroupSpec& H);

/// |Σ_{x∈H} ψ(xξ)| < sqrt(p) for every ξ ≠ 0 (full subgroups only).
/// Throws InequalityViolated on any failure.
bool complete_sum_bound_check(const FieldContext& ctx, const SubgroupSpec& H);

/// H1 = {g0^t : 0 <= t < T p^{-δ}/4}, the length computed exactly as the
/// number of integers strictly below the real bound. Asserts T/|H1| <= 8 p^δ.
SubgroupSpec build_H1(const FieldContext& ctx, std::int64_t g0, std::int64_t T,
                      const Rational& delta);

struct TranslateReport {
  std::int64_t xi = 0;
  std::int64_t l = 0;
  double lhs = 0.0;     // |μ̂_H(g^l ξ)|
  double rhs = 0.0;     // |μ̂_H(ξ)| - p^{-δ}/2
  double margin = 0.0;  // lhs - rhs, positive when the inequality holds
};

/// |μ̂_H(g^l ξ)| > |μ̂_H(ξ)| - p^{-δ}/2 for 0 <= l < T p^{-δ}/4, where H is
/// the segment {g0^t : t < T}. Throws InequalityViolated when it fails.
TranslateReport check_translate_inequality(const FieldContext& ctx,
                                           std::int64_t g0, std::int64_t T,
                                           const Rational& delta,
                                           std::int64_t xi, std::int64_t l);

struct IncompleteSmearReport {
  bool hypothesis_present = false;  // some ξ0 ≠ 0 with |μ̂(ξ0)| > 2 p^{-δ}
  std::int64_t xi0 = 0;
  std::int64_t k = 0;
  Rational delta;
  Rational eta;
  std::int64_t T = 0;
  std::int64_t H1_size = 0;
  double min_avg_margin = 0.0;    // ν̂_k(ξ)² <= (2^{4k}/|H1|) Σ_{h∈H1} ν̂_k(hξ)²
  double min_chain_margin = 0.0;  // ν̂_k(ξ)^{4k} <= 2^{8k²+6k} p^{2kδ} Σ_x ν̂_k(xξ)² ν_k(x)
  double final_lhs = 0.0;         // p^{-11η} Σ_ξ ν̂_k(ξ)²
  double final_rhs = 0.0;         // Σ_{ξ,x} ν̂_k(ξ)² ν̂_k(xξ)² ν_k(x)
  double final_margin = 0.0;
  double spectral_l2 = 0.0;       // Σ_ξ ν̂_k(ξ)²
};

/// The incomplete-sum chain for the segment {g0^t : t < T}: selects (k, δ),
/// records whether the large-coefficient hypothesis |μ̂(ξ0)| > 2p^{-δ} holds
/// (its absence is the non-contradiction branch, reported rather than failed),
/// then verifies the H1-averaged smear inequality, the chained inequality with
/// constant 2^{8k²+6k} p^{2kδ}, and the final p^{-11η} inequality, recording
/// margins. The margin checks need only ξ ∈ Λ_δ, so they run on both branches.
IncompleteSmearReport check_incomplete_smear(const FieldContext& ctx,
                                             std::int64_t g0, std::int64_t T,
                                             const Rational& eta,
                                             const SelectOptions& opts = {});

}  // namespace expsum
