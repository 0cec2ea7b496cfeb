#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "expsum/bgs.hpp"
#include "expsum/field.hpp"
#include "expsum/measure.hpp"
#include "expsum/rational.hpp"
#include "expsum/spectrum.hpp"

namespace expsum {

/// Stability constant Δ ∈ (0, 1/2] with the cut thresholds the set
/// construction derives from it.
struct StabilityParams {
  Rational delta;

  explicit StabilityParams(Rational d);

  /// S1 cut: φ(x) > Δ φ(0)/8.
  Rational s1_cut(const Rational& phi0) const { return delta * phi0 / 8; }
  /// T cut: |S2 ∩ y⁻¹S2| > Δ p/(8 φ(0)).
  Rational t_cut(std::int64_t p, const Rational& phi0) const {
    return delta * Rational(p, 1) / (8 * phi0);
  }
  /// S0 cut: φ(x) > 2^{-7} Δ² φ(0).
  Rational s0_cut(const Rational& phi0) const {
    return delta * delta * phi0 / 128;
  }
};

/// Correlation/size hypotheses a measure must satisfy before the set
/// construction runs. Everything is evaluated in exact rational arithmetic:
/// the correlation sum Σ_{ξ,y} |μ̂(ξ)|²|μ̂(yξ)|²μ(y) equals
/// (1/p) Σ_{x,y} φ(x)φ(xy)μ(y) with φ = p(μ∗μ⁻), and Σ_ξ |μ̂(ξ)|² = φ(0).
struct HypothesisReport {
  Rational delta_param;            // Δ
  Rational corr_lhs;               // Σ_{ξ,y} |μ̂(ξ)|² |μ̂(yξ)|² μ(y)
  Rational corr_rhs;               // Δ Σ_ξ |μ̂(ξ)|²
  bool corr_ok = false;
  Rational mass_at_zero;           // μ(0)
  Rational l2_mass;                // Σ_x μ(x)²
  Rational quarter_delta;          // Δ/4
  bool mass_zero_ok = false;
  bool l2_ok = false;
  bool pass = false;
};

HypothesisReport verify_hypotheses(const Measure& mu, const Rational& Delta);

struct StageRecord {
  std::string name;
  std::string relation;  // ">", ">=", "<", "<="
  Rational lhs;
  Rational rhs;
  bool pass = false;
  std::int64_t set_size = -1;
};

struct PipelineCertificate {
  std::int64_t p = 0;
  Rational delta_param;  // Δ
  HypothesisReport hypotheses;
  std::vector<StageRecord> stages;
  std::vector<std::int64_t> S1, S2, T, S3, S0, S4;  // S = S4
  std::int64_t sum_set_size = 0;   // |S+S|
  std::int64_t prod_set_size = 0;  // |S·S|
  Rational spectral_l2;            // Σ_ξ |μ̂(ξ)|², exact
  bool all_pass = false;
};

/// Runs the full construction S1 ⊇ S2 ⊇ S3 ⊇ S4 = S with every intermediate
/// inequality asserted in exact arithmetic. Throws HypothesesFail when the
/// input hypotheses fail, StageViolation when a theorem-backed stage fails
/// (a bug signal), and propagates ExtractionFailed from the extractor.
PipelineCertificate run_pipeline(const FieldContext& ctx, const Measure& mu,
                                 const Rational& Delta);
PipelineCertificate run_pipeline(const Measure& mu, const Rational& Delta);

struct ContradictionReport {
  std::int64_t p = 0;
  std::int64_t subgroup_order = 0;
  double alpha = 0.0;  // log_p |H|
  Rational eta;
  SpectrumReport selection;
  double max_nontrivial = 0.0;
  std::int64_t witness_xi = -1;  // smallest ξ≠0 with |μ̂_H(ξ)| > p^{-δ}; -1 if none
  Rational delta_param;          // Δ, dyadic realization of p^{-10η} clamped to 1/2
  bool supnorm_guard_ok = false; // 1/|H| < Δ/4
  std::string branch;            // "bound_holds" | "hypotheses_fail" | "pipeline"
  std::optional<HypothesisReport> hypotheses;
  std::optional<PipelineCertificate> certificate;
  std::optional<SumProductScore> score;  // sum-product score of S
};

/// Chains select_k_delta → verify_hypotheses (μ = ν_k, Δ = p^{-10η}) →
/// run_pipeline, reporting which branch the desk-scale instance lands in.
/// delta_override replaces the p^{-10η} choice of Δ when supplied.
ContradictionReport assemble_contradiction(
    const FieldContext& ctx, const SubgroupSpec& H, const Rational& eta,
    const std::optional<Rational>& delta_override = std::nullopt);

/// Exact dyadic rational with the same value as x (finite doubles only).
Rational dyadic_from_double(double x);

}  // namespace expsum
