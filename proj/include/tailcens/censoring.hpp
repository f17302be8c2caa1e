#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "tailcens/distributions.hpp"
#include "tailcens/rng.hpp"

namespace tailcens {

// Observed minima Z_{1,n} <= ... <= Z_{n,n} with their non-censoring
// indicators. Immutable once built.
class CensoredSample {
 public:
  // Sorts ascending by z; at equal z uncensored (delta = 1) entries come
  // first. Requires n >= 3, z > 0 and finite, delta in {0,1}.
  static CensoredSample from_observations(std::vector<double> z, std::vector<std::uint8_t> delta);

  std::size_t size() const { return z_.size(); }
  std::span<const double> z() const { return z_; }
  std::span<const std::uint8_t> delta() const { return delta_; }

  // 1-based order statistic Z_{i,n} and its indicator.
  double order_stat(std::size_t i) const { return z_[i - 1]; }
  bool uncensored(std::size_t i) const { return delta_[i - 1] != 0; }

  CensoredSample scaled(double c) const;

  friend bool operator==(const CensoredSample&, const CensoredSample&) = default;

 private:
  CensoredSample(std::vector<double> z, std::vector<std::uint8_t> delta)
      : z_(std::move(z)), delta_(std::move(delta)) {}
  std::vector<double> z_;
  std::vector<std::uint8_t> delta_;
};

// X with law `target` observed under censoring by C with law `censor`.
struct CensorModel {
  HeavyTailDist target;
  HeavyTailDist censor;
};

// Z_i = min(x_i, c_i), delta_i = [x_i <= c_i]. Throws std::invalid_argument
// on length mismatch or fewer than 3 pairs.
CensoredSample censor_pairs(std::span<const double> x, std::span<const double> c);

// Draws n values of X, then n values of C, from the same stream.
CensoredSample draw_sample(const CensorModel& model, Stream& rng, std::size_t n);

// p = γ2 / (γ1 + γ2).
double theoretical_p(double gamma1, double gamma2);

// p_β = p + γβ.
double p_beta(double p, double gamma, double beta);

// Hall constants of Z = min(X, C) from those of X and C.
HallParams combined_hall(const HallParams& f, const HallParams& g);

// P(δ = 1 | Z = z).
double p_of_z(const CensorModel& model, double z);

// CSV with header "z,delta". Throws ParseError naming the offending line.
CensoredSample read_censored_csv(std::istream& in);
void write_censored_csv(std::ostream& out, const CensoredSample& sample);

}  // namespace tailcens
