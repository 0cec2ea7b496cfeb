#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "expsum/rational.hpp"

namespace expsum {

struct Tolerances {
  double parseval = 1e-9;   // relative, Parseval identity
  double duality = 1e-9;    // relative, Σ μ ρ̂ = Σ μ̂ ρ
  double dual_path = 1e-8;  // absolute per entry, exact ν_k vs spectral path
};

struct VerifyOptions {
  std::int64_t p_max = 101;
  std::uint64_t seed = 20240601;
  Tolerances tol;
};

struct SuiteResult {
  std::string suite;
  std::int64_t instances = 0;
  std::int64_t failures = 0;
  std::string first_failure;
  double elapsed_s = 0.0;
};

/// Known suites: parseval, convolution, smear, lemmas, incomplete.
std::vector<std::string> verify_suite_names();

/// Runs one suite across all primes <= p_max and their subgroups.
SuiteResult run_verify_suite(const std::string& name, const VerifyOptions& options);

}  // namespace expsum
