#include "expsum/verify.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <random>

#include "expsum/exp_sums.hpp"
#include "expsum/field.hpp"
#include "expsum/measure.hpp"
#include "expsum/spectrum.hpp"

namespace expsum {

namespace {

struct SuiteRun {
  SuiteResult result;

  void check(bool ok, const std::string& what) {
    ++result.instances;
    if (!ok) {
      ++result.failures;
      if (result.first_failure.empty()) result.first_failure = what;
    }
  }

  // Counts exceptions (InequalityViolated and friends) as failures.
  template <typename F>
  void guarded(const std::string& what, F&& f) {
    try {
      f();
      ++result.instances;
    } catch (const Error& e) {
      ++result.instances;
      ++result.failures;
      if (result.first_failure.empty()) {
        result.first_failure = what + ": " + e.what();
      }
    }
  }
};

Measure random_measure(std::int64_t p, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> weight(0, 1000);
  std::vector<BigInt> w(static_cast<std::size_t>(p));
  BigInt total = 0;
  for (auto& wi : w) {
    wi = weight(rng);
    total += wi;
  }
  if (total == 0) {
    std::uniform_int_distribution<std::int64_t> pos(0, p - 1);
    w[static_cast<std::size_t>(pos(rng))] = 1;
  }
  return Measure::from_weights(p, std::move(w));
}

void suite_parseval(SuiteRun& run, const VerifyOptions& options) {
  std::mt19937_64 rng(options.seed);
  for (std::int64_t p : {std::int64_t{5}, std::int64_t{7}, std::int64_t{11},
                         std::int64_t{101}}) {
    if (p > options.p_max) continue;
    for (int i = 0; i < 200; ++i) {
      const Measure mu = random_measure(p, rng);
      const auto& spec = mu.spectrum();
      double spectral = 0.0;
      for (const auto& c : spec) spectral += std::norm(c);
      const double exact = static_cast<double>(p) * to_double(mu.l2_mass());
      run.check(std::abs(spectral - exact) <= options.tol.parseval * exact,
                "parseval p=" + std::to_string(p) + " i=" + std::to_string(i));
    }
    for (int i = 0; i < 50; ++i) {
      const Measure mu = random_measure(p, rng);
      const Measure rho = random_measure(p, rng);
      std::complex<double> lhs{0.0, 0.0}, rhs{0.0, 0.0};
      for (std::int64_t x = 0; x < p; ++x) {
        lhs += mu.mass_double(x) * rho.spectrum()[static_cast<std::size_t>(x)];
        rhs += rho.mass_double(x) * mu.spectrum()[static_cast<std::size_t>(x)];
      }
      const double scale = std::max(1.0, std::abs(lhs));
      run.check(std::abs(lhs - rhs) <= options.tol.duality * scale,
                "duality p=" + std::to_string(p) + " i=" + std::to_string(i));
    }
  }
}

void suite_convolution(SuiteRun& run, const VerifyOptions& options) {
  for (std::int64_t p : primes_in_range(3, options.p_max)) {
    const FieldContext ctx = make_field_context(p);
    for (std::int64_t m : divisors(p - 1)) {
      const SubgroupSpec H = subgroup(ctx, m);
      const Measure mu = uniform_on(ctx, H);
      const Rational sup = mu.sup_mass();
      for (std::int64_t k = 1; k <= 4; ++k) {
        const Measure nu_k = k_fold_nu(mu, k);
        // spectral reconstruction path
        const auto nu_hat = nu_k_spectrum(mu, k);
        const auto rebuilt = inverse_transform_real(p, nu_hat);
        double worst = 0.0;
        for (std::int64_t x = 0; x < p; ++x) {
          worst = std::max(worst, std::abs(rebuilt[static_cast<std::size_t>(x)] -
                                           nu_k.mass_double(x)));
        }
        run.check(worst <= options.tol.dual_path,
                  "dual-path p=" + std::to_string(p) + " m=" + std::to_string(m) +
                      " k=" + std::to_string(k));
        run.check(nu_k.sup_mass() <= sup,
                  "sup-norm p=" + std::to_string(p) + " m=" + std::to_string(m) +
                      " k=" + std::to_string(k));
        // exact invariance under one generator of H
        bool invariant = true;
        if (H.order() > 1) {
          const std::int64_t h = ctx.pow_g(m);  // generator of the subgroup
          for (std::int64_t x = 0; x < p && invariant; ++x) {
            invariant = nu_k.mass(x) == nu_k.mass(h * x % p);
          }
        }
        run.check(invariant, "invariance p=" + std::to_string(p) +
                                 " m=" + std::to_string(m) + " k=" + std::to_string(k));
      }
    }
  }
}

void suite_smear(SuiteRun& run, const VerifyOptions& options) {
  for (std::int64_t p : primes_in_range(3, options.p_max)) {
    const FieldContext ctx = make_field_context(p);
    for (std::int64_t m : divisors(p - 1)) {
      const SubgroupSpec H = subgroup(ctx, m);
      for (std::int64_t k = 1; k <= 3; ++k) {
        run.guarded("smear p=" + std::to_string(p) + " m=" + std::to_string(m) +
                        " k=" + std::to_string(k),
                    [&] { check_smear_out(ctx, H, k); });
      }
    }
  }
}

void suite_lemmas(SuiteRun& run, const VerifyOptions& options) {
  const Rational eta(1, 4);
  // The termination guarantee is about the unbounded iteration; verification
  // raises the configurable k cap well past what any p <= 101 instance needs.
  const SelectOptions select_opts{.k_cap = 1024};
  for (std::int64_t p : primes_in_range(3, options.p_max)) {
    const FieldContext ctx = make_field_context(p);
    for (std::int64_t m : divisors(p - 1)) {
      const SubgroupSpec H = subgroup(ctx, m);
      run.guarded("complete-sum p=" + std::to_string(p) + " m=" + std::to_string(m),
                  [&] { complete_sum_bound_check(ctx, H); });
      for (const Rational& delta :
           {Rational(1, 10), Rational(3, 10), Rational(1, 2)}) {
        run.guarded("lambda-bounds p=" + std::to_string(p) + " m=" + std::to_string(m),
                    [&] {
                      const auto report = check_lambda_bounds(ctx, H, delta);
                      if (!report.upper_ok || !report.lower_ok) {
                        fail(ErrorCode::InequalityViolated, "lambda bound fails");
                      }
                    });
      }
      run.guarded("select p=" + std::to_string(p) + " m=" + std::to_string(m), [&] {
        const Measure mu = uniform_on(ctx, H);
        const auto sel = select_k_delta(mu, eta, select_opts);
        if (sel.delta * Rational(sel.k, 1) * Rational(sel.k, 1) >= eta) {
          fail(ErrorCode::InequalityViolated, "delta < eta/k^2 fails");
        }
      });
      run.guarded("chain p=" + std::to_string(p) + " m=" + std::to_string(m),
                  [&] { check_smearing_chain(ctx, H, eta, select_opts); });
      run.guarded("stat-mult p=" + std::to_string(p) + " m=" + std::to_string(m),
                  [&] { check_statistical_mult(ctx, H, eta, select_opts); });
    }
  }
}

void suite_incomplete(SuiteRun& run, const VerifyOptions& options) {
  const Rational eta(1, 4);
  for (std::int64_t p : primes_in_range(11, options.p_max)) {
    if (p != 11 && p != 31 && p != 101) continue;  // representative battery
    const FieldContext ctx = make_field_context(p);
    const std::int64_t g0 = ctx.g;
    for (std::int64_t T : {(p - 1) / 2, p - 1}) {
      if (T < 8) continue;
      const Rational delta(1, 5);
      const std::int64_t admissible =
          count_below_power_bound(Rational(T, 4), p, delta);
      for (std::int64_t l = 0; l < admissible; ++l) {
        for (std::int64_t xi = 1; xi < p; xi += std::max<std::int64_t>(1, p / 16)) {
          run.guarded("translate p=" + std::to_string(p) + " T=" + std::to_string(T) +
                          " l=" + std::to_string(l) + " xi=" + std::to_string(xi),
                      [&] { check_translate_inequality(ctx, g0, T, delta, xi, l); });
        }
      }
      run.guarded("incomplete-smear p=" + std::to_string(p) + " T=" + std::to_string(T),
                  [&] { check_incomplete_smear(ctx, g0, T, eta, {.k_cap = 1024}); });
    }
  }
}

}  // namespace

std::vector<std::string> verify_suite_names() {
  return {"parseval", "convolution", "smear", "lemmas", "incomplete"};
}

SuiteResult run_verify_suite(const std::string& name, const VerifyOptions& options) {
  SuiteRun run;
  run.result.suite = name;
  const auto t0 = std::chrono::steady_clock::now();
  if (name == "parseval") suite_parseval(run, options);
  else if (name == "convolution") suite_convolution(run, options);
  else if (name == "smear") suite_smear(run, options);
  else if (name == "lemmas") suite_lemmas(run, options);
  else if (name == "incomplete") suite_incomplete(run, options);
  else fail(ErrorCode::InvalidArgument, "unknown suite: " + name);
  const auto t1 = std::chrono::steady_clock::now();
  run.result.elapsed_s = std::chrono::duration<double>(t1 - t0).count();
  return run.result;
}

}  // namespace expsum
