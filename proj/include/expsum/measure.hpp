#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <mutex>
#include <vector>

#include "expsum/field.hpp"
#include "expsum/rational.hpp"

namespace expsum {

/// Probability measure on F_p in dual representation: exact rational masses
/// (bigint numerators over one common denominator) and a lazily cached
/// double-precision Fourier transform
///
///   μ̂(ξ) = Σ_x μ(x) e^{2πi xξ/p},      μ̂(0) = 1,  conj(μ̂(ξ)) = μ̂(-ξ).
///
/// Values are immutable; copies share the spectral cache.
class Measure {
 public:
  /// Masses w[x]/Σw. Throws EmptySupport when all weights vanish,
  /// InvalidArgument on negative weights or size mismatch.
  static Measure from_weights(std::int64_t p, std::vector<BigInt> weights);

  /// Masses given as exact rationals; they must sum to 1.
  static Measure from_rationals(std::int64_t p, const std::vector<Rational>& mass);

  std::int64_t modulus() const { return p_; }
  const std::vector<BigInt>& numerators() const { return num_; }
  const BigInt& denominator() const { return den_; }

  Rational mass(std::int64_t x) const {
    return Rational(num_[static_cast<std::size_t>(norm(x))], den_);
  }
  double mass_double(std::int64_t x) const {
    return to_double(mass(x));
  }
  std::vector<double> mass_doubles() const;

  /// Σ_x μ(x)^2, exact. Equals (1/p) Σ_ξ |μ̂(ξ)|² by Parseval.
  Rational l2_mass() const;
  /// max_x μ(x), exact.
  Rational sup_mass() const;
  std::vector<std::int64_t> support() const;

  /// Direct O(p²) transform, computed once and cached.
  const std::vector<std::complex<double>>& spectrum() const;

 private:
  Measure(std::int64_t p, std::vector<BigInt> num, BigInt den);

  std::int64_t norm(std::int64_t x) const { return ((x % p_) + p_) % p_; }

  struct Cache {
    std::once_flag once;
    std::vector<std::complex<double>> spec;
  };

  std::int64_t p_;
  std::vector<BigInt> num_;
  BigInt den_;
  std::shared_ptr<Cache> cache_;

  friend Measure reflect(const Measure&);
  friend Measure convolve(const Measure&, const Measure&);
};

/// Uniform measure on a nonempty subset of F_p.
Measure uniform_on(std::int64_t p, const std::vector<std::int64_t>& support);
Measure uniform_on(const FieldContext& ctx, const SubgroupSpec& H);
Measure point_mass(std::int64_t p, std::int64_t at);

/// μ⁻(x) = μ(-x).
Measure reflect(const Measure& mu);

/// Exact convolution (μ∗ρ)(x) = Σ_y μ(y) ρ(x-y).
Measure convolve(const Measure& mu, const Measure& rho);

/// ν_k = k-fold convolution of ν = μ∗μ⁻, by binary exponentiation.
/// Satisfies ν̂_k = |μ̂|^{2k} and max_x ν_k(x) <= max_z μ(z).
Measure k_fold_nu(const Measure& mu, std::int64_t k);

/// φ(x) = p(μ∗μ⁻)(x) = Σ_ξ |μ̂(ξ)|² ψ(xξ), kept exact.
/// φ >= 0, Σ_x φ(x) = p, and φ(0) = p Σ μ² dominates every other value.
struct PhiFunction {
  std::int64_t p = 0;
  std::vector<BigInt> num;  // φ(x) = num[x]/den
  BigInt den = 1;

  Rational at(std::int64_t x) const {
    return Rational(num[static_cast<std::size_t>(((x % p) + p) % p)], den);
  }
  Rational peak() const { return Rational(num[0], den); }
};

PhiFunction phi_of(const Measure& mu);

/// Alias for Measure::spectrum(), matching the operation vocabulary.
inline const std::vector<std::complex<double>>& fourier(const Measure& mu) {
  return mu.spectrum();
}

/// ν̂_k as doubles: |μ̂(ξ)|^{2k}, with values below 1e-300 clamped to zero.
/// Returns the clamp count through `clamped` when non-null.
std::vector<double> nu_k_spectrum(const Measure& mu, std::int64_t k,
                                  std::int64_t* clamped = nullptr);

/// Inverse transform of a real spectrum: (1/p) Σ_ξ s(ξ) e^{-2πi xξ/p},
/// real parts. Independent reconstruction path for convolution tests.
std::vector<double> inverse_transform_real(std::int64_t p,
                                           const std::vector<double>& spectrum);

}  // namespace expsum
