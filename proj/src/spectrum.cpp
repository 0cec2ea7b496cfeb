#include "expsum/spectrum.hpp"

#include <cmath>
#include <string>

namespace expsum {

namespace {

constexpr double kIneqSlack = 1e-9;

void require_full_subgroup(const SubgroupSpec& H, const char* where) {
  if (H.kind != SubgroupKind::FullSubgroup) {
    fail(ErrorCode::InvalidArgument,
         std::string(where) + " needs a full multiplicative subgroup");
  }
}

// Σ_ξ ν̂_k(ξ)² = p Σ_x ν_k(x)², exact by Parseval.
Rational l2_spectral_mass_exact(const Measure& nu_k) {
  return Rational(nu_k.modulus(), 1) * nu_k.l2_mass();
}

}  // namespace

std::vector<std::int64_t> lambda_delta(const Measure& mu, const Rational& delta,
                                       double guard) {
  if (delta <= 0) fail(ErrorCode::InvalidArgument, "delta must be positive");
  const std::int64_t p = mu.modulus();
  const double threshold =
      std::pow(static_cast<double>(p), -to_double(delta));
  const auto& spec = mu.spectrum();
  std::vector<std::int64_t> out;
  for (std::int64_t xi = 0; xi < p; ++xi) {
    const double mag = std::abs(spec[static_cast<std::size_t>(xi)]);
    if (std::abs(mag - threshold) < guard) {
      fail(ErrorCode::BoundaryAmbiguity,
           "|mu_hat(" + std::to_string(xi) + ")| sits within " +
               std::to_string(guard) + " of threshold p^{-delta}");
    }
    if (mag > threshold) out.push_back(xi);
  }
  return out;
}

LambdaBoundsReport check_lambda_bounds(const FieldContext& ctx,
                                       const SubgroupSpec& H,
                                       const Rational& delta) {
  const Measure mu = uniform_on(ctx, H);
  const auto lambda = lambda_delta(mu, delta);

  LambdaBoundsReport report;
  report.delta = delta;
  report.lambda_size = static_cast<std::int64_t>(lambda.size());

  // |Λ_δ| |H| <= p^{1+2δ}
  const Rational exponent = Rational(1, 1) + Rational(2, 1) * delta;
  report.upper_ok =
      cmp_scaled_power(Rational(report.lambda_size * H.order(), 1), ctx.p,
                       exponent, Rational(1, 1)) <= 0;
  report.upper_rhs = std::pow(static_cast<double>(ctx.p), to_double(exponent)) /
                     static_cast<double>(H.order());

  for (std::int64_t xi : lambda) {
    if (xi != 0) {
      report.lower_applicable = true;
      break;
    }
  }
  report.lower_rhs = H.order();
  report.lower_ok =
      !report.lower_applicable || report.lambda_size >= H.order();
  return report;
}

SpectrumReport select_k_delta(const Measure& mu, const Rational& eta,
                              const SelectOptions& opts) {
  const std::int64_t p = mu.modulus();
  if (p < 3) fail(ErrorCode::InvalidArgument, "select_k_delta needs p >= 3");
  if (eta <= 0) fail(ErrorCode::EtaTooSmall, "eta must be positive");
  const double eta_floor = 5.0 / (std::pow(static_cast<double>(p), 3.0) *
                                  std::log(static_cast<double>(p)));
  if (to_double(eta) < eta_floor) {
    fail(ErrorCode::EtaTooSmall,
         "eta below 5/(p^3 log p) = " + std::to_string(eta_floor));
  }

  const BigInt M = 2 * (floor_rational(Rational(1, 1) / eta) + 1);

  SpectrumReport report;
  report.eta = eta;

  BigInt k = 4;
  for (BigInt i = 0; i <= M; ++i) {
    if (k > opts.k_cap) {
      fail(ErrorCode::LoopCapExceeded,
           "k = " + k.str() + " exceeds cap " + std::to_string(opts.k_cap));
    }
    const std::int64_t ki = k.convert_to<std::int64_t>();
    // k_{i+1} = floor(k_i²/η) + 1, δ_i = 1/k_{i+1}, all in exact arithmetic.
    const BigInt k_next = floor_rational(Rational(k * k, 1) / eta) + 1;
    const Rational delta_i(BigInt(1), k_next);
    report.iterations.emplace_back(ki, delta_i);

    const Measure nu_k = k_fold_nu(mu, ki);
    const Rational l2_exact = l2_spectral_mass_exact(nu_k);
    const auto lambda = lambda_delta(mu, delta_i);
    const Rational lambda_size(static_cast<std::int64_t>(lambda.size()), 1);

    if (lambda.empty() || lambda.front() != 0) {
      fail(ErrorCode::InequalityViolated, "0 must lie in Lambda_delta");
    }

    // stop when Σ ν̂_k² <= p^η |Λ_δ|
    if (cmp_scaled_power(l2_exact, p, eta, lambda_size) <= 0) {
      // lower half of the bracket: |Λ_δ| <= p^η Σ ν̂_k²
      if (cmp_scaled_power(lambda_size, p, eta, l2_exact) > 0) {
        fail(ErrorCode::InequalityViolated,
             "lower bracket p^{-eta}|Lambda| <= sum nu_hat_k^2 failed");
      }
      // δ < η/k² by construction of k_{i+1}
      if (delta_i * Rational(k * k, 1) >= eta) {
        fail(ErrorCode::InequalityViolated, "delta < eta/k^2 failed");
      }
      report.k = ki;
      report.delta = delta_i;
      report.lambda_set = lambda;
      report.l2_spectral_mass_exact = l2_exact;
      report.l2_spectral_mass = to_double(l2_exact);
      nu_k_spectrum(mu, ki, &report.clamped_coeffs);
      return report;
    }
    k = k_next;
  }
  fail(ErrorCode::LoopCapExceeded,
       "no admissible i <= M = " + M.str() + " (implementation bug)");
}

SmearReport check_smear_out(const FieldContext& ctx, const SubgroupSpec& H,
                            std::int64_t k) {
  require_full_subgroup(H, "check_smear_out");
  const std::int64_t p = ctx.p;
  const Measure mu = uniform_on(ctx, H);
  const Measure nu_k = k_fold_nu(mu, k);

  SmearReport report;
  report.k = k;
  const std::vector<double> nu_hat = nu_k_spectrum(mu, k, &report.clamped_coeffs);
  const std::vector<double> nu_mass = nu_k.mass_doubles();

  double min_margin = 0.0;
  std::int64_t argmin = -1;
  for (std::int64_t xi = 0; xi < p; ++xi) {
    const double lhs = std::pow(nu_hat[static_cast<std::size_t>(xi)],
                                4.0 * static_cast<double>(k));
    double rhs = 0.0;
    for (std::int64_t x = 0; x < p; ++x) {
      const double nh = nu_hat[static_cast<std::size_t>(x * xi % p)];
      rhs += nh * nh * nu_mass[static_cast<std::size_t>(x)];
    }
    const double margin = rhs - lhs;
    if (argmin < 0 || margin < min_margin) {
      min_margin = margin;
      argmin = xi;
    }
  }
  report.min_margin = min_margin;
  report.argmin_xi = argmin;
  if (min_margin < -kIneqSlack) {
    fail(ErrorCode::InequalityViolated,
         "smear-out failed at xi = " + std::to_string(argmin) +
             ", margin = " + std::to_string(min_margin));
  }
  return report;
}

StatMultReport check_statistical_mult(const FieldContext& ctx,
                                      const SubgroupSpec& H,
                                      const Rational& eta,
                                      const SelectOptions& opts) {
  require_full_subgroup(H, "check_statistical_mult");
  const std::int64_t p = ctx.p;
  const Measure mu = uniform_on(ctx, H);
  const SpectrumReport sel = select_k_delta(mu, eta, opts);
  const Measure nu_k = k_fold_nu(mu, sel.k);

  const std::vector<double> nu_hat = nu_k_spectrum(mu, sel.k);
  const std::vector<double> nu_mass = nu_k.mass_doubles();

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

  StatMultReport report;
  report.k = sel.k;
  report.delta = sel.delta;
  report.eta = eta;
  report.spectral_l2 = total_l2;
  report.lhs = std::pow(static_cast<double>(p), -10.0 * to_double(eta)) * total_l2;
  report.rhs = double_sum;
  report.margin = report.rhs - report.lhs;
  report.trivial_upper_ok = double_sum <= total_l2 * (1.0 + kIneqSlack);

  if (report.margin < -kIneqSlack) {
    fail(ErrorCode::InequalityViolated,
         "statistical multiplicative stability failed, margin = " +
             std::to_string(report.margin));
  }
  if (!report.trivial_upper_ok) {
    fail(ErrorCode::InequalityViolated,
         "trivial upper bound on the double sum failed");
  }
  return report;
}

ChainReport check_smearing_chain(const FieldContext& ctx, const SubgroupSpec& H,
                                 const Rational& eta,
                                 const SelectOptions& opts) {
  require_full_subgroup(H, "check_smearing_chain");
  const std::int64_t p = ctx.p;
  const Measure mu = uniform_on(ctx, H);
  const SpectrumReport sel = select_k_delta(mu, eta, opts);
  const std::vector<double> nu_hat = nu_k_spectrum(mu, sel.k);

  ChainReport report;
  report.k = sel.k;
  report.delta = sel.delta;
  for (std::int64_t xi = 0; xi < p; ++xi) {
    const double nh = nu_hat[static_cast<std::size_t>(xi)];
    report.total_l2 += nh * nh;
  }
  for (std::int64_t xi : sel.lambda_set) {
    const double nh = nu_hat[static_cast<std::size_t>(xi)];
    report.lambda_l2 += nh * nh;
    report.lambda_high += std::pow(nh, 4.0 * static_cast<double>(sel.k) + 2.0);
  }
  const double scale1 =
      std::pow(static_cast<double>(p), -2.0 * to_double(eta));
  const double scale2 = std::pow(
      static_cast<double>(p),
      8.0 * static_cast<double>(sel.k) * static_cast<double>(sel.k) *
          to_double(sel.delta));
  report.link1_margin = report.lambda_l2 - scale1 * report.total_l2;
  report.link2_margin = scale2 * report.lambda_high - report.lambda_l2;
  report.ok =
      report.link1_margin >= -kIneqSlack && report.link2_margin >= -kIneqSlack;
  if (!report.ok) {
    fail(ErrorCode::InequalityViolated, "smearing chain link failed");
  }
  return report;
}

}  // namespace expsum
