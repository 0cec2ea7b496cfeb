#include "expsum/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "expsum/exp_sums.hpp"

namespace expsum {

namespace {

struct StageChecker {
  PipelineCertificate* cert;

  void record(const std::string& name, const std::string& relation,
              Rational lhs, Rational rhs, std::int64_t set_size = -1) {
    bool pass = false;
    if (relation == ">") pass = lhs > rhs;
    else if (relation == ">=") pass = lhs >= rhs;
    else if (relation == "<") pass = lhs < rhs;
    else if (relation == "<=") pass = lhs <= rhs;
    else fail(ErrorCode::InvalidArgument, "bad relation " + relation);
    cert->stages.push_back(
        {name, relation, std::move(lhs), std::move(rhs), pass, set_size});
    if (!pass) {
      fail(ErrorCode::StageViolation,
           name + ": " + rational_to_string(cert->stages.back().lhs) + " " +
               relation + " " + rational_to_string(cert->stages.back().rhs) +
               " does not hold");
    }
  }
};

Rational pow2(std::uint64_t e) { return Rational(pow_big(BigInt(2), e), 1); }

std::vector<std::int64_t> mask_to_set(const std::vector<char>& mask) {
  std::vector<std::int64_t> out;
  for (std::size_t x = 0; x < mask.size(); ++x) {
    if (mask[x]) out.push_back(static_cast<std::int64_t>(x));
  }
  return out;
}

}  // namespace

Rational dyadic_from_double(double x) {
  if (!std::isfinite(x)) fail(ErrorCode::InvalidArgument, "non-finite double");
  if (x == 0.0) return Rational(0, 1);
  int e = 0;
  const double m = std::frexp(x, &e);
  const auto mantissa = static_cast<std::int64_t>(std::ldexp(m, 53));
  e -= 53;
  Rational r(mantissa, 1);
  if (e >= 0) {
    r *= Rational(pow_big(BigInt(2), static_cast<std::uint64_t>(e)), 1);
  } else {
    r /= Rational(pow_big(BigInt(2), static_cast<std::uint64_t>(-e)), 1);
  }
  return r;
}

StabilityParams::StabilityParams(Rational d) : delta(std::move(d)) {
  if (delta <= 0 || delta > Rational(1, 2)) {
    fail(ErrorCode::InvalidArgument, "Delta must lie in (0, 1/2]");
  }
}

HypothesisReport verify_hypotheses(const Measure& mu, const Rational& Delta) {
  const StabilityParams params(Delta);
  const std::int64_t p = mu.modulus();
  const PhiFunction phi = phi_of(mu);
  const auto& Mn = mu.numerators();
  const BigInt& D = mu.denominator();
  const auto& Pn = phi.num;
  const BigInt& Pd = phi.den;

  // Σ_{ξ,y} |μ̂(ξ)|²|μ̂(yξ)|²μ(y) = (1/p) Σ_{x,y} φ(x)φ(xy)μ(y)
  BigInt full_sum = 0;
  for (std::int64_t y = 0; y < p; ++y) {
    const BigInt& my = Mn[static_cast<std::size_t>(y)];
    if (my == 0) continue;
    BigInt inner = 0;
    for (std::int64_t x = 0; x < p; ++x) {
      inner += Pn[static_cast<std::size_t>(x)] *
               Pn[static_cast<std::size_t>(x * y % p)];
    }
    full_sum += inner * my;
  }

  HypothesisReport report;
  report.delta_param = Delta;
  report.corr_lhs = Rational(full_sum, BigInt(p) * Pd * Pd * D);
  report.corr_rhs = Delta * phi.peak();  // Σ_ξ |μ̂(ξ)|² = φ(0)
  report.corr_ok = report.corr_lhs > report.corr_rhs;
  report.mass_at_zero = mu.mass(0);
  report.l2_mass = mu.l2_mass();
  report.quarter_delta = Delta / 4;
  report.mass_zero_ok = report.mass_at_zero < report.quarter_delta;
  report.l2_ok = report.l2_mass < report.quarter_delta;
  report.pass = report.corr_ok && report.mass_zero_ok && report.l2_ok;
  return report;
}

PipelineCertificate run_pipeline(const FieldContext& ctx, const Measure& mu,
                                 const Rational& Delta) {
  const std::int64_t p = ctx.p;
  if (mu.modulus() != p) {
    fail(ErrorCode::ModulusMismatch, "measure modulus differs from field");
  }

  const StabilityParams params(Delta);
  PipelineCertificate cert;
  cert.p = p;
  cert.delta_param = Delta;
  cert.hypotheses = verify_hypotheses(mu, Delta);
  if (!cert.hypotheses.pass) {
    fail(ErrorCode::HypothesesFail, "correlation or mass hypotheses fail");
  }
  StageChecker check{&cert};

  const PhiFunction phi = phi_of(mu);
  const auto& Mn = mu.numerators();
  const BigInt& D = mu.denominator();
  const auto& Pn = phi.num;
  const BigInt& Pd = phi.den;
  const Rational phi0 = phi.peak();
  cert.spectral_l2 = phi0;

  // (a) Σ_{x, y≠0} φ(x)φ(xy)μ(y) > (3/4) Δ p φ(0)
  BigInt mult_sum = 0;
  for (std::int64_t y = 1; y < p; ++y) {
    const BigInt& my = Mn[static_cast<std::size_t>(y)];
    if (my == 0) continue;
    BigInt inner = 0;
    for (std::int64_t x = 0; x < p; ++x) {
      inner += Pn[static_cast<std::size_t>(x)] *
               Pn[static_cast<std::size_t>(x * y % p)];
    }
    mult_sum += inner * my;
  }
  const BigInt stage_den = Pd * Pd * D;
  const Rational mult_stability(mult_sum, stage_den);
  check.record("multiplicative_stability", ">", mult_stability,
               Rational(3, 4) * Delta * Rational(p, 1) * phi0);
  // trivial upper bound from the remark: the same sum never exceeds p φ(0)
  check.record("multiplicative_stability_upper", "<=", mult_stability,
               Rational(p, 1) * phi0);

  // (b) S1 = {x : φ(x) > Δφ(0)/8} and its restricted correlation sum
  std::vector<char> in_s1(static_cast<std::size_t>(p), 0);
  const Rational s1_cut = params.s1_cut(phi0);
  for (std::int64_t x = 0; x < p; ++x) {
    in_s1[static_cast<std::size_t>(x)] = phi.at(x) > s1_cut;
  }
  cert.S1 = mask_to_set(in_s1);
  const auto s1_size = static_cast<std::int64_t>(cert.S1.size());

  BigInt restricted_sum = 0;
  for (std::int64_t y = 1; y < p; ++y) {
    const BigInt& my = Mn[static_cast<std::size_t>(y)];
    if (my == 0) continue;
    BigInt inner = 0;
    for (std::int64_t x : cert.S1) {
      if (in_s1[static_cast<std::size_t>(x * y % p)]) {
        inner += Pn[static_cast<std::size_t>(x)] *
                 Pn[static_cast<std::size_t>(x * y % p)];
      }
    }
    restricted_sum += inner * my;
  }
  check.record("s1_restricted_sum", ">", Rational(restricted_sum, stage_den),
               Rational(1, 2) * Delta * Rational(p, 1) * phi0, s1_size);

  // (c) Δp/(2φ(0)) < |S1| < 8p/(Δφ(0)),  S2 = S1 \ {0},  |S2| >= |S1|/2
  check.record("s1_size_lower", "<", Delta * Rational(p, 1) / (2 * phi0),
               Rational(s1_size, 1), s1_size);
  check.record("s1_size_upper", "<", Rational(s1_size, 1),
               Rational(8 * p, 1) / (Delta * phi0), s1_size);
  std::vector<char> in_s2 = in_s1;
  in_s2[0] = 0;
  cert.S2 = mask_to_set(in_s2);
  const auto s2_size = static_cast<std::int64_t>(cert.S2.size());
  if (s2_size == 0) {
    fail(ErrorCode::HypothesesEffectivelyEmpty,
         "S2 is empty; set construction cannot start");
  }
  check.record("s2_half_of_s1", ">=", Rational(2 * s2_size, 1),
               Rational(s1_size, 1), s2_size);

  // intersection counts c[y] = |S2 ∩ y^{-1}S2| = #{x ∈ S2 : xy ∈ S2}
  std::vector<std::int64_t> isect(static_cast<std::size_t>(p), 0);
  for (std::int64_t y = 1; y < p; ++y) {
    std::int64_t count = 0;
    for (std::int64_t x : cert.S2) {
      if (in_s2[static_cast<std::size_t>(x * y % p)]) ++count;
    }
    isect[static_cast<std::size_t>(y)] = count;
  }

  // (d) Σ_{y≠0} |S2 ∩ y^{-1}S2| μ(y) >= Δp/(4φ(0))
  BigInt expected = 0;
  for (std::int64_t y = 1; y < p; ++y) {
    expected += BigInt(isect[static_cast<std::size_t>(y)]) *
                Mn[static_cast<std::size_t>(y)];
  }
  check.record("expected_intersection", ">=", Rational(expected, D),
               Delta * Rational(p, 1) / (4 * phi0));

  // (e) T = {y : |S2 ∩ y^{-1}S2| > Δp/(8φ(0))}, |T| >= (Δ^5/2^15)|S1|,
  //     then T is trimmed to at most |S2| keeping the largest intersections.
  const Rational t_threshold = params.t_cut(p, phi0);
  std::vector<std::int64_t> t_set;
  for (std::int64_t y = 1; y < p; ++y) {
    if (Rational(isect[static_cast<std::size_t>(y)], 1) > t_threshold) {
      t_set.push_back(y);
    }
  }
  check.record("t_size", ">=", Rational(static_cast<std::int64_t>(t_set.size()), 1),
               pow_rational(Delta, 5) / pow2(15) * Rational(s1_size, 1),
               static_cast<std::int64_t>(t_set.size()));
  if (static_cast<std::int64_t>(t_set.size()) > s2_size) {
    std::sort(t_set.begin(), t_set.end(), [&](std::int64_t a, std::int64_t b) {
      if (isect[static_cast<std::size_t>(a)] != isect[static_cast<std::size_t>(b)]) {
        return isect[static_cast<std::size_t>(a)] > isect[static_cast<std::size_t>(b)];
      }
      return a < b;
    });
    t_set.resize(static_cast<std::size_t>(s2_size));
    std::sort(t_set.begin(), t_set.end());
  }
  cert.T = t_set;
  const auto t_size = static_cast<std::int64_t>(t_set.size());
  check.record("t_trimmed_lower", ">=", Rational(t_size, 1),
               pow_rational(Delta, 5) / pow2(15) * Rational(s2_size, 1), t_size);
  check.record("t_trimmed_upper", "<=", Rational(t_size, 1),
               Rational(s2_size, 1), t_size);

  // (f) G = {(x,y) : x ∈ S2, y ∈ T, xy ∈ S2}, |G| >= (Δ/8)^7 |S2|²
  std::vector<std::pair<std::int64_t, std::int64_t>> popular_graph;
  for (std::int64_t y : t_set) {
    for (std::int64_t x : cert.S2) {
      if (in_s2[static_cast<std::size_t>(x * y % p)]) popular_graph.emplace_back(x, y);
    }
  }
  const auto g_size = static_cast<std::int64_t>(popular_graph.size());
  const Rational mult_alpha = pow_rational(Delta / 8, 7);
  check.record("g_density", ">=", Rational(g_size, 1),
               mult_alpha * Rational(s2_size, 1) * Rational(s2_size, 1), g_size);

  // (g) multiplicative extraction through discrete logs in Z/(p-1)
  std::vector<std::int64_t> log_a, log_b;
  for (std::int64_t x : cert.S2) log_a.push_back(discrete_log(ctx, x));
  for (std::int64_t y : t_set) log_b.push_back(discrete_log(ctx, y));
  std::vector<std::pair<std::int64_t, std::int64_t>> log_graph;
  log_graph.reserve(popular_graph.size());
  for (const auto& [x, y] : popular_graph) {
    log_graph.emplace_back(discrete_log(ctx, x), discrete_log(ctx, y));
  }
  const BgsInstance mult_instance =
      BgsInstance::make(p - 1, log_a, log_b, std::move(log_graph),
                        Rational(s2_size, 1), mult_alpha);
  const ExtractionResult mult_extraction = bgs_extract(mult_instance);
  if (!mult_extraction.certified) {
    fail(ErrorCode::ExtractionFailed, "multiplicative extraction uncertified");
  }
  cert.S3.clear();
  for (std::int64_t a : mult_extraction.A_prime) cert.S3.push_back(ctx.pow_g(a));
  std::sort(cert.S3.begin(), cert.S3.end());
  const auto s3_size = static_cast<std::int64_t>(cert.S3.size());
  check.record("s3_size", ">", Rational(s3_size, 1),
               pow_rational(Delta, 28) / pow2(100) * Rational(s1_size, 1), s3_size);
  const auto s3_product =
      static_cast<std::int64_t>(productset(cert.S3, cert.S3, p).size());
  check.record("s3_product_bound", "<=", Rational(s3_product, 1),
               pow2(304) / pow_rational(Delta, 84) * Rational(s3_size, 1), s3_size);

  // (h) additive stability: Σ_{x1,x2∈S3} φ(x1-x2) > 2^{-6} Δ² φ(0) |S3|²
  BigInt additive_sum = 0;
  for (std::int64_t x1 : cert.S3) {
    for (std::int64_t x2 : cert.S3) {
      additive_sum += Pn[static_cast<std::size_t>(((x1 - x2) % p + p) % p)];
    }
  }
  check.record("additive_stability", ">", Rational(additive_sum, Pd),
               pow_rational(Delta, 2) / pow2(6) * phi0 *
                   Rational(s3_size, 1) * Rational(s3_size, 1));

  // (i) S0 = {x : φ(x) > 2^{-7} Δ² φ(0)}, |S0| < (2^108/Δ^31)|S3|
  std::vector<char> in_s0(static_cast<std::size_t>(p), 0);
  const Rational s0_cut = params.s0_cut(phi0);
  for (std::int64_t x = 0; x < p; ++x) {
    in_s0[static_cast<std::size_t>(x)] = phi.at(x) > s0_cut;
  }
  cert.S0 = mask_to_set(in_s0);
  const auto s0_size = static_cast<std::int64_t>(cert.S0.size());
  check.record("s0_size", "<", Rational(s0_size, 1),
               pow2(108) / pow_rational(Delta, 31) * Rational(s3_size, 1), s0_size);

  // (j) G' = {(x1, -x2) ∈ S3 × (-S3) : x1 - x2 ∈ S0}, at least 2^{-7}Δ²|S3|²
  std::vector<std::pair<std::int64_t, std::int64_t>> diff_graph;
  for (std::int64_t x1 : cert.S3) {
    for (std::int64_t x2 : cert.S3) {
      if (in_s0[static_cast<std::size_t>(((x1 - x2) % p + p) % p)]) {
        diff_graph.emplace_back(x1, (p - x2) % p);
      }
    }
  }
  const auto gprime_size = static_cast<std::int64_t>(diff_graph.size());
  check.record("gprime_density", ">=", Rational(gprime_size, 1),
               pow_rational(Delta, 2) / pow2(7) * Rational(s3_size, 1) *
                   Rational(s3_size, 1),
               gprime_size);

  // (k) additive extraction with N = (2^108/Δ^31)|S3|, α = Δ^64/2^223
  std::vector<std::int64_t> neg_s3;
  for (std::int64_t x : cert.S3) neg_s3.push_back((p - x) % p);
  std::sort(neg_s3.begin(), neg_s3.end());
  const Rational add_n = pow2(108) / pow_rational(Delta, 31) * Rational(s3_size, 1);
  const Rational add_alpha = pow_rational(Delta, 64) / pow2(223);
  const BgsInstance add_instance = BgsInstance::make(
      p, cert.S3, std::move(neg_s3), std::move(diff_graph), add_n, add_alpha);
  const ExtractionResult add_extraction = bgs_extract(add_instance);
  if (!add_extraction.certified) {
    fail(ErrorCode::ExtractionFailed, "additive extraction uncertified");
  }
  cert.S4 = add_extraction.A_prime;
  const auto s4_size = static_cast<std::int64_t>(cert.S4.size());
  check.record("s4_size", ">", Rational(s4_size, 1),
               pow_rational(Delta, 225) / pow2(799) * Rational(s3_size, 1), s4_size);
  cert.sum_set_size = static_cast<std::int64_t>(sumset(cert.S4, cert.S4, p).size());
  cert.prod_set_size =
      static_cast<std::int64_t>(productset(cert.S4, cert.S4, p).size());
  check.record("s4_sum_bound", "<", Rational(cert.sum_set_size, 1),
               pow2(2728) / pow_rational(Delta, 768) * Rational(s4_size, 1), s4_size);
  check.record("s4_product_bound", "<", Rational(cert.prod_set_size, 1),
               pow2(1103) / pow_rational(Delta, 309) * Rational(s4_size, 1), s4_size);

  // (l) final sandwich and combined doubling for S = S4
  check.record("final_sandwich_lower", "<",
               pow_rational(Delta, 254) / pow2(900) * Rational(p, 1),
               Rational(s4_size, 1) * phi0, s4_size);
  check.record("final_sandwich_upper", "<", Rational(s4_size, 1) * phi0,
               Rational(8, 1) / Delta * Rational(p, 1), s4_size);
  check.record("combined_doubling", "<",
               Rational(cert.sum_set_size + cert.prod_set_size, 1),
               pow2(2729) / pow_rational(Delta, 768) * Rational(s4_size, 1),
               s4_size);

  cert.all_pass = true;
  for (const auto& stage : cert.stages) cert.all_pass &= stage.pass;
  return cert;
}

PipelineCertificate run_pipeline(const Measure& mu, const Rational& Delta) {
  const FieldContext ctx = make_field_context(mu.modulus());
  return run_pipeline(ctx, mu, Delta);
}

ContradictionReport assemble_contradiction(
    const FieldContext& ctx, const SubgroupSpec& H, const Rational& eta,
    const std::optional<Rational>& delta_override) {
  const std::int64_t p = ctx.p;
  const Measure mu_h = uniform_on(ctx, H);

  ContradictionReport report;
  report.p = p;
  report.subgroup_order = H.order();
  report.alpha = std::log(static_cast<double>(H.order())) /
                 std::log(static_cast<double>(p));
  report.eta = eta;
  report.selection = select_k_delta(mu_h, eta);

  const double threshold =
      std::pow(static_cast<double>(p), -to_double(report.selection.delta));
  const auto& spec = mu_h.spectrum();
  report.max_nontrivial = 0.0;
  for (std::int64_t xi = 1; xi < p; ++xi) {
    const double mag = std::abs(spec[static_cast<std::size_t>(xi)]);
    if (mag > report.max_nontrivial) report.max_nontrivial = mag;
    if (report.witness_xi < 0 && mag > threshold) report.witness_xi = xi;
  }

  // Δ = p^{-10η} as an exact dyadic rational, clamped into (0, 1/2]
  Rational delta_param =
      delta_override
          ? *delta_override
          : dyadic_from_double(
                std::pow(static_cast<double>(p), -10.0 * to_double(eta)));
  if (delta_param > Rational(1, 2)) delta_param = Rational(1, 2);
  report.delta_param = delta_param;
  report.supnorm_guard_ok =
      Rational(1, H.order()) < delta_param / 4;

  if (report.witness_xi < 0) {
    report.branch = "bound_holds";
    return report;
  }

  const Measure nu_k = k_fold_nu(mu_h, report.selection.k);
  report.hypotheses = verify_hypotheses(nu_k, delta_param);
  if (!report.hypotheses->pass) {
    report.branch = "hypotheses_fail";
    return report;
  }

  report.certificate = run_pipeline(ctx, nu_k, delta_param);
  report.score = sum_product_score(report.certificate->S4, p);
  report.branch = "pipeline";
  return report;
}

}  // namespace expsum
