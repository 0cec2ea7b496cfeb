#include "expsum/exp_sums.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "expsum/measure.hpp"

namespace expsum {

namespace {

constexpr double kIneqSlack = 1e-9;

}  // namespace

ExpSumResult exp_sum(const FieldContext& ctx, const SubgroupSpec& H,
                     std::int64_t xi) {
  const std::int64_t p = ctx.p;
  xi = ((xi % p) + p) % p;
  std::complex<double> acc{0.0, 0.0};
  for (std::int64_t x : H.elements) {
    acc += ctx.psi_table[static_cast<std::size_t>(x * xi % p)];
  }
  ExpSumResult result;
  result.xi = xi;
  result.value = acc;
  result.magnitude = std::abs(acc);
  result.normalized = result.magnitude / static_cast<double>(H.order());
  return result;
}

EmpiricalBound max_nontrivial_fourier(const FieldContext& ctx,
                                      const SubgroupSpec& H) {
  EmpiricalBound bound;
  bound.p = ctx.p;
  bound.subgroup_order = H.order();
  bound.max_nontrivial = -1.0;
  for (std::int64_t xi = 1; xi < ctx.p; ++xi) {
    const double normalized = exp_sum(ctx, H, xi).normalized;
    if (normalized > bound.max_nontrivial) {
      bound.max_nontrivial = normalized;
      bound.argmax_xi = xi;
    }
  }
  bound.beta_emp =
      bound.max_nontrivial > 0.0
          ? -std::log(bound.max_nontrivial) / std::log(static_cast<double>(ctx.p))
          : std::numeric_limits<double>::infinity();
  if (bound.beta_emp == 0.0) bound.beta_emp = 0.0;  // avoid -0 in reports
  return bound;
}

bool complete_sum_bound_check(const FieldContext& ctx, const SubgroupSpec& H) {
  if (H.kind != SubgroupKind::FullSubgroup) {
    fail(ErrorCode::InvalidArgument,
         "complete_sum_bound_check needs a full subgroup");
  }
  const double root_p = std::sqrt(static_cast<double>(ctx.p));
  for (std::int64_t xi = 1; xi < ctx.p; ++xi) {
    const double mag = exp_sum(ctx, H, xi).magnitude;
    if (mag >= root_p) {
      fail(ErrorCode::InequalityViolated,
           "complete sum magnitude " + std::to_string(mag) + " >= sqrt(p) at xi = " +
               std::to_string(xi));
    }
  }
  return true;
}

SubgroupSpec build_H1(const FieldContext& ctx, std::int64_t g0, std::int64_t T,
                      const Rational& delta) {
  if (delta <= 0) fail(ErrorCode::InvalidArgument, "delta must be positive");
  const std::int64_t ord = element_order(ctx, g0);
  if (T > ord) {
    fail(ErrorCode::InvalidArgument,
         "T = " + std::to_string(T) + " exceeds ord(g0) = " + std::to_string(ord));
  }
  // #{ t : 0 <= t < T p^{-δ}/4 }, decided exactly
  const std::int64_t count =
      count_below_power_bound(Rational(T, 4), ctx.p, delta);
  if (count < 1) {
    fail(ErrorCode::EmptySegment, "T p^{-delta}/4 < 1 leaves no exponent");
  }
  SubgroupSpec h1 = segment(ctx, g0, count);
  // T/|H1| <= 8 p^δ, needed by the substitution step downstream
  if (cmp_scaled_power(Rational(T, 1), ctx.p, delta, Rational(8 * count, 1)) > 0) {
    fail(ErrorCode::InequalityViolated, "|H|/|H1| <= 8 p^delta failed");
  }
  return h1;
}

TranslateReport check_translate_inequality(const FieldContext& ctx,
                                           std::int64_t g0, std::int64_t T,
                                           const Rational& delta,
                                           std::int64_t xi, std::int64_t l) {
  const std::int64_t p = ctx.p;
  xi = ((xi % p) + p) % p;
  if (xi == 0) fail(ErrorCode::ZeroArgument, "xi must be nonzero");
  const std::int64_t admissible =
      count_below_power_bound(Rational(T, 4), p, delta);
  if (l < 0 || l >= admissible) {
    fail(ErrorCode::InvalidArgument,
         "l = " + std::to_string(l) + " outside [0, " + std::to_string(admissible) + ")");
  }
  const SubgroupSpec H = segment(ctx, g0, T);

  std::int64_t shift = 1;
  for (std::int64_t i = 0; i < l; ++i) shift = shift * g0 % p;

  TranslateReport report;
  report.xi = xi;
  report.l = l;
  report.lhs = exp_sum(ctx, H, shift * xi % p).normalized;
  report.rhs = exp_sum(ctx, H, xi).normalized -
               std::pow(static_cast<double>(p), -to_double(delta)) / 2.0;
  report.margin = report.lhs - report.rhs;
  if (report.margin <= 0.0) {
    fail(ErrorCode::InequalityViolated,
         "translate inequality failed at xi = " + std::to_string(xi) +
             ", l = " + std::to_string(l));
  }
  return report;
}

IncompleteSmearReport check_incomplete_smear(const FieldContext& ctx,
                                             std::int64_t g0, std::int64_t T,
                                             const Rational& eta,
                                             const SelectOptions& opts) {
  const std::int64_t p = ctx.p;
  const SubgroupSpec H = segment(ctx, g0, T);
  const Measure mu = uniform_on(ctx, H);
  const SpectrumReport sel = select_k_delta(mu, eta, opts);

  IncompleteSmearReport report;
  report.k = sel.k;
  report.delta = sel.delta;
  report.eta = eta;
  report.T = T;

  // contradiction hypothesis: |μ̂(ξ0)| > 2 p^{-δ} for some nonzero ξ0.
  // The margin checks below only need ξ ∈ Λ_δ, so they run either way;
  // the flag records which branch of the argument applies.
  const double two_thr =
      2.0 * std::pow(static_cast<double>(p), -to_double(sel.delta));
  const auto& spec = mu.spectrum();
  report.xi0 = -1;
  for (std::int64_t xi = 1; xi < p; ++xi) {
    if (std::abs(spec[static_cast<std::size_t>(xi)]) > two_thr) {
      report.xi0 = xi;
      break;
    }
  }
  report.hypothesis_present = report.xi0 >= 0;

  const SubgroupSpec H1 = build_H1(ctx, g0, T, sel.delta);
  report.H1_size = H1.order();

  const Measure nu_k = k_fold_nu(mu, sel.k);
  const std::vector<double> nu_hat = nu_k_spectrum(mu, sel.k);
  const std::vector<double> nu_mass = nu_k.mass_doubles();
  const double kd = static_cast<double>(sel.k);

  const double avg_const = std::pow(2.0, 4.0 * kd) / static_cast<double>(H1.order());
  const double chain_const =
      std::pow(2.0, 8.0 * kd * kd + 6.0 * kd) *
      std::pow(static_cast<double>(p), 2.0 * kd * to_double(sel.delta));

  bool first = true;
  for (std::int64_t xi : sel.lambda_set) {
    const double nh = nu_hat[static_cast<std::size_t>(xi)];
    double h1_sum = 0.0;
    for (std::int64_t h : H1.elements) {
      const double nhx = nu_hat[static_cast<std::size_t>(h * xi % p)];
      h1_sum += nhx * nhx;
    }
    const double avg_margin = avg_const * h1_sum - nh * nh;

    double smear_sum = 0.0;
    for (std::int64_t x = 0; x < p; ++x) {
      const double nhx = nu_hat[static_cast<std::size_t>(x * xi % p)];
      smear_sum += nhx * nhx * nu_mass[static_cast<std::size_t>(x)];
    }
    const double chain_margin =
        chain_const * smear_sum - std::pow(nh, 4.0 * kd);
    if (first || avg_margin < report.min_avg_margin) report.min_avg_margin = avg_margin;
    if (first || chain_margin < report.min_chain_margin) {
      report.min_chain_margin = chain_margin;
    }
    first = false;
  }
  if (report.min_avg_margin < -kIneqSlack) {
    fail(ErrorCode::InequalityViolated, "H1-averaged smear inequality failed");
  }
  if (report.min_chain_margin < -kIneqSlack) {
    fail(ErrorCode::InequalityViolated, "chained incomplete smear inequality failed");
  }

  double total_l2 = 0.0;
  double double_sum = 0.0;
  for (std::int64_t xi = 0; xi < p; ++xi) {
    const double nh2 = nu_hat[static_cast<std::size_t>(xi)] *
                       nu_hat[static_cast<std::size_t>(xi)];
    total_l2 += nh2;
    double inner = 0.0;
    for (std::int64_t x = 0; x < p; ++x) {
      const double nhx = nu_hat[static_cast<std::size_t>(x * xi % p)];
      inner += nhx * nhx * nu_mass[static_cast<std::size_t>(x)];
    }
    double_sum += nh2 * inner;
  }
  report.spectral_l2 = total_l2;
  report.final_lhs =
      std::pow(static_cast<double>(p), -11.0 * to_double(eta)) * total_l2;
  report.final_rhs = double_sum;
  report.final_margin = report.final_rhs - report.final_lhs;
  if (report.final_margin < -kIneqSlack) {
    fail(ErrorCode::InequalityViolated, "final incomplete-sum inequality failed");
  }
  return report;
}

}  // namespace expsum
