#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "tailcens/censoring.hpp"
#include "tailcens/rng.hpp"

namespace tailcens::testing {

// Random censored sample with a random censoring pattern, for identities that
// must hold on any data.
inline CensoredSample random_sample(std::uint64_t seed, std::size_t n, double censor_rate = 0.3) {
  Stream rng(seed);
  std::vector<double> z(n);
  std::vector<std::uint8_t> d(n);
  for (std::size_t i = 0; i < n; ++i) {
    z[i] = std::pow(rng.uniform(), -0.4);
    d[i] = rng.uniform() < censor_rate ? 0 : 1;
  }
  return CensoredSample::from_observations(std::move(z), std::move(d));
}

inline CensoredSample with_delta(const CensoredSample& s, std::uint8_t value) {
  std::vector<double> z(s.z().begin(), s.z().end());
  return CensoredSample::from_observations(std::move(z),
                                           std::vector<std::uint8_t>(s.size(), value));
}

// Classical Hill mean of the top-k log-excesses, summed directly.
inline double hill_direct(const CensoredSample& s, std::size_t k) {
  const auto z = s.z();
  const std::size_t n = z.size();
  double sum = 0.0;
  for (std::size_t i = 1; i <= k; ++i) sum += std::log(z[n - i] / z[n - k - 1]);
  return sum / static_cast<double>(k);
}

// ζ(s), s > 1: partial sum to N-1 plus an Euler-Maclaurin tail.
inline double zeta_series(double s) {
  constexpr int kTerms = 2000;
  double sum = 0.0;
  for (int m = kTerms - 1; m >= 1; --m) sum += std::pow(double(m), -s);
  const double nn = kTerms;
  sum += std::pow(nn, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(nn, -s) +
         s * std::pow(nn, -s - 1.0) / 12.0 -
         s * (s + 1.0) * (s + 2.0) * std::pow(nn, -s - 3.0) / 720.0;
  return sum;
}

// Constants of the deterministic bound on d_{i,k} for 0 < a < 1.
inline std::pair<double, double> spacing_bound_constants(double a) {
  const double c1 = 1.0 / (1.0 - a);
  const double c2 = (1.0 + a * (1.0 - a) * std::pow(2.0, a) * (zeta_series(1.0 + a) - 1.0)) / (1.0 - a);
  return {c1, c2};
}

inline bool rel_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace tailcens::testing

#include "tailcens/asymptotics.hpp"

namespace tailcens::testing {

// Number of (i, k, a) triples, 2 <= i <= k <= k_max, where a bound fails.
inline std::size_t spacing_bound_violations(std::size_t k_max, const std::vector<double>& a_grid) {
  std::size_t bad = 0;
  for (double a : a_grid) {
    const SpacingBoundTable table(k_max, a);
    const auto [c1, c2] = a > 0.0 ? spacing_bound_constants(a) : std::pair{0.0, 0.0};
    for (std::size_t k = 2; k <= k_max; ++k) {
      const double k1 = double(k) + 1.0;
      for (std::size_t i = 2; i <= k; ++i) {
        const auto t = table.at(i, k);
        const double id = double(i);
        const double u = id / k1;
        if (t.c_i < -1.0 / id || t.c_i > 0.0) ++bad;
        if (t.harmonic_gap < 0.0 || t.harmonic_gap > 1.0 / id) ++bad;
        double lo, hi;
        if (a < 0.0) {
          lo = -1.0 / (u * k1);
          hi = -a / (u * k1);
        } else {
          const double scale = u * std::pow(k1, 1.0 - a);
          lo = -c2 / scale;
          hi = -c1 / scale;
        }
        if (t.d_ik < lo || t.d_ik > hi) ++bad;
      }
    }
  }
  return bad;
}

}  // namespace tailcens::testing
