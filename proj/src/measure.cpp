#include "expsum/measure.hpp"

#include <algorithm>
#include <numbers>
#include <optional>
#include <string>
#include <utility>

namespace expsum {

namespace {

// Divide all numerators and the denominator by their common gcd.
void normalize(std::vector<BigInt>& num, BigInt& den) {
  BigInt g = den;
  for (const BigInt& n : num) {
    if (g == 1) break;
    if (n != 0) g = boost::multiprecision::gcd(g, n);
  }
  if (g > 1) {
    den /= g;
    for (BigInt& n : num) n /= g;
  }
}

}  // namespace

Measure::Measure(std::int64_t p, std::vector<BigInt> num, BigInt den)
    : p_(p), num_(std::move(num)), den_(std::move(den)),
      cache_(std::make_shared<Cache>()) {}

Measure Measure::from_weights(std::int64_t p, std::vector<BigInt> weights) {
  if (p < 1) fail(ErrorCode::InvalidArgument, "modulus must be positive");
  if (static_cast<std::int64_t>(weights.size()) != p) {
    fail(ErrorCode::InvalidArgument, "weight vector must have length p");
  }
  BigInt total = 0;
  for (const BigInt& w : weights) {
    if (w < 0) fail(ErrorCode::InvalidArgument, "negative mass");
    total += w;
  }
  if (total == 0) fail(ErrorCode::EmptySupport, "all weights vanish");
  normalize(weights, total);
  return Measure(p, std::move(weights), std::move(total));
}

Measure Measure::from_rationals(std::int64_t p, const std::vector<Rational>& mass) {
  if (static_cast<std::int64_t>(mass.size()) != p) {
    fail(ErrorCode::InvalidArgument, "mass vector must have length p");
  }
  BigInt den = 1;
  Rational total = 0;
  for (const Rational& m : mass) {
    if (m < 0) fail(ErrorCode::InvalidArgument, "negative mass");
    den = boost::multiprecision::lcm(den, boost::multiprecision::denominator(m));
    total += m;
  }
  if (total != 1) fail(ErrorCode::InvalidArgument, "masses must sum to 1");
  std::vector<BigInt> num;
  num.reserve(mass.size());
  for (const Rational& m : mass) {
    num.push_back(boost::multiprecision::numerator(m) *
                  (den / boost::multiprecision::denominator(m)));
  }
  return from_weights(p, std::move(num));
}

std::vector<double> Measure::mass_doubles() const {
  std::vector<double> out(num_.size());
  for (std::size_t i = 0; i < num_.size(); ++i) {
    out[i] = to_double(Rational(num_[i], den_));
  }
  return out;
}

Rational Measure::l2_mass() const {
  BigInt s = 0;
  for (const BigInt& n : num_) s += n * n;
  return Rational(s, den_ * den_);
}

Rational Measure::sup_mass() const {
  const BigInt& m = *std::max_element(num_.begin(), num_.end());
  return Rational(m, den_);
}

std::vector<std::int64_t> Measure::support() const {
  std::vector<std::int64_t> out;
  for (std::size_t x = 0; x < num_.size(); ++x) {
    if (num_[x] != 0) out.push_back(static_cast<std::int64_t>(x));
  }
  return out;
}

const std::vector<std::complex<double>>& Measure::spectrum() const {
  std::call_once(cache_->once, [this] {
    const std::int64_t p = p_;
    std::vector<std::complex<double>> psi(static_cast<std::size_t>(p));
    for (std::int64_t j = 0; j < p; ++j) {
      psi[static_cast<std::size_t>(j)] = std::polar(
          1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(p));
    }
    const std::vector<double> w = mass_doubles();
    auto& spec = cache_->spec;
    spec.assign(static_cast<std::size_t>(p), {0.0, 0.0});
    for (std::int64_t xi = 0; xi < p; ++xi) {
      std::complex<double> acc{0.0, 0.0};
      for (std::int64_t x = 0; x < p; ++x) {
        if (w[static_cast<std::size_t>(x)] == 0.0) continue;
        acc += w[static_cast<std::size_t>(x)] * psi[static_cast<std::size_t>(x * xi % p)];
      }
      spec[static_cast<std::size_t>(xi)] = acc;
    }
  });
  return cache_->spec;
}

Measure uniform_on(std::int64_t p, const std::vector<std::int64_t>& support) {
  if (support.empty()) fail(ErrorCode::EmptySupport, "uniform_on: empty support");
  std::vector<BigInt> w(static_cast<std::size_t>(p), 0);
  for (std::int64_t x : support) {
    const std::int64_t v = ((x % p) + p) % p;
    if (w[static_cast<std::size_t>(v)] != 0) {
      fail(ErrorCode::InvalidArgument, "duplicate support element " + std::to_string(v));
    }
    w[static_cast<std::size_t>(v)] = 1;
  }
  return Measure::from_weights(p, std::move(w));
}

Measure uniform_on(const FieldContext& ctx, const SubgroupSpec& H) {
  return uniform_on(ctx.p, H.elements);
}

Measure point_mass(std::int64_t p, std::int64_t at) {
  return uniform_on(p, {at});
}

Measure reflect(const Measure& mu) {
  const std::int64_t p = mu.modulus();
  std::vector<BigInt> num(static_cast<std::size_t>(p));
  for (std::int64_t x = 0; x < p; ++x) {
    num[static_cast<std::size_t>(x)] = mu.numerators()[static_cast<std::size_t>((p - x) % p)];
  }
  return Measure(p, std::move(num), mu.denominator());
}

Measure convolve(const Measure& mu, const Measure& rho) {
  const std::int64_t p = mu.modulus();
  if (rho.modulus() != p) {
    fail(ErrorCode::ModulusMismatch,
         std::to_string(p) + " vs " + std::to_string(rho.modulus()));
  }
  const auto& a = mu.numerators();
  const auto& b = rho.numerators();
  std::vector<BigInt> num(static_cast<std::size_t>(p), 0);
  for (std::int64_t y = 0; y < p; ++y) {
    const BigInt& ay = a[static_cast<std::size_t>(y)];
    if (ay == 0) continue;
    for (std::int64_t z = 0; z < p; ++z) {
      const BigInt& bz = b[static_cast<std::size_t>(z)];
      if (bz == 0) continue;
      num[static_cast<std::size_t>((y + z) % p)] += ay * bz;
    }
  }
  BigInt den = mu.denominator() * rho.denominator();
  normalize(num, den);
  return Measure(p, std::move(num), std::move(den));
}

Measure k_fold_nu(const Measure& mu, std::int64_t k) {
  if (k < 1) fail(ErrorCode::InvalidArgument, "k must be >= 1");
  const Measure nu = convolve(mu, reflect(mu));
  Measure base = nu;
  std::optional<Measure> acc;
  std::int64_t e = k;
  while (e > 0) {
    if (e & 1) acc = acc ? convolve(*acc, base) : base;
    e >>= 1;
    if (e > 0) base = convolve(base, base);
  }
  return *acc;
}

PhiFunction phi_of(const Measure& mu) {
  const Measure nu = convolve(mu, reflect(mu));
  PhiFunction phi;
  phi.p = mu.modulus();
  phi.den = nu.denominator();
  phi.num.reserve(nu.numerators().size());
  for (const BigInt& n : nu.numerators()) phi.num.push_back(n * phi.p);
  normalize(phi.num, phi.den);
  return phi;
}

std::vector<double> nu_k_spectrum(const Measure& mu, std::int64_t k,
                                  std::int64_t* clamped) {
  const auto& spec = mu.spectrum();
  std::vector<double> out(spec.size());
  std::int64_t clamps = 0;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const double mag = std::abs(spec[i]);
    double v = std::pow(mag, 2.0 * static_cast<double>(k));
    if (v < 1e-300) {
      if (mag > 0.0 && v > 0.0) ++clamps;
      v = 0.0;
    }
    out[i] = v;
  }
  if (clamped) *clamped = clamps;
  return out;
}

std::vector<double> inverse_transform_real(std::int64_t p,
                                           const std::vector<double>& spectrum) {
  std::vector<std::complex<double>> psi(static_cast<std::size_t>(p));
  for (std::int64_t j = 0; j < p; ++j) {
    psi[static_cast<std::size_t>(j)] = std::polar(
        1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(p));
  }
  std::vector<double> out(static_cast<std::size_t>(p), 0.0);
  for (std::int64_t x = 0; x < p; ++x) {
    std::complex<double> acc{0.0, 0.0};
    for (std::int64_t xi = 0; xi < p; ++xi) {
      // e^{-2πi xξ/p} = psi[(p - xξ mod p) mod p]
      acc += spectrum[static_cast<std::size_t>(xi)] *
             psi[static_cast<std::size_t>((p - x * xi % p) % p)];
    }
    out[static_cast<std::size_t>(x)] = acc.real() / static_cast<double>(p);
  }
  return out;
}

}  // namespace expsum
