#pragma once

#include <cstddef>
#include <vector>

#include "tailcens/censoring.hpp"
#include "tailcens/distributions.hpp"

namespace tailcens {

// Everything the limit theorems need about a censoring model at a given
// tuning parameter beta and sample geometry (k, n).
struct AsymptoticParams {
  double gamma1;  // EVI of X
  double gamma2;  // EVI of C
  double gamma;   // EVI of Z, 1/γ = 1/γ1 + 1/γ2
  double p;       // γ2 / (γ1 + γ2)
  double beta;
  HallParams hall_f;
  HallParams hall_g;
  HallParams hall_z;
  double lambda;  // √k (k/n)^{γβ*}, exactly 0 for an exact power-law Z

  static AsymptoticParams from_model(const CensorModel& model, double beta, std::size_t k,
                                     std::size_t n);
  double p_beta() const { return p + gamma * beta; }
};

// Variance of √k (T̂ₖ(β) - γ1/(1+γ1β)). Throws TheoremConditionViolated
// when p + γβ <= 1/2.
double sigma2_t(double gamma, double p, double beta);

// Asymptotic mean of √k (T̂ₖ(β) - γ1/(1+γ1β)) per unit λ. Zero when the
// second-order rate of F exceeds that of G, or when F has no second order.
double m_t(const AsymptoticParams& params);

// Variance of √k (γ̂₁,ₖ(β) - γ1), computed as (γ²/p_β²)(p/(2p_β-1))(1+βγ1)⁴.
double sigma2_gamma(double gamma1, double p, double beta);

// Same quantity through the factored form γ1² (p/(2p-1)) (1+βγ1)² (2p-1)/(2p_β-1).
// Undefined at p = 1/2.
double sigma2_gamma_factored(double gamma1, double p, double beta);

double m_gamma(const AsymptoticParams& params);

// Variance of the bias-reduced estimator with δ = γβ1. Requires p > 1/2, δ > 0.
double sigma2_br(double gamma1, double p, double delta);

// Variance of the pseudo-ML (Hill / p̂) estimator, γ1²/p. Requires 0 < p <= 1.
double sigma2_hill(double gamma1, double p);

struct LambdaBias {
  double value;
  bool exact;  // γβ* == 0 marks an exact power law: use λ = 0 instead
};

LambdaBias lambda_bias(std::size_t k, std::size_t n, double gamma_beta_star);

struct Interval {
  double low;
  double high;
};

// Two-sided normal quantile z_{(1+level)/2}.
double normal_critical_value(double level);

// value ± z σ/√k.
Interval normal_interval(double value, double sigma2, std::size_t k, double level);

// Plug-in interval for γ̂₁,ₖ(β): σ̂² = sigma2_gamma(γ̂, p̂, β). The bias term is
// not subtracted. Throws TheoremConditionViolated when p̂(1+γ̂β) <= 1/2.
Interval confidence_interval(double estimate, double p_hat, double beta, std::size_t k,
                             double level);

struct SpacingBoundTerms {
  double c_i;
  double harmonic_gap;
  double d_ik;
};

// c_i = 1 + i log((i-1)/i), harmonic gap Σ_{j=i}^k 1/j - log((k+1)/i) and
// d_{i,k} = (1/i) Σ_{j=2}^i u_{j,k}^{-a} - u_{i,k}^{-a}/(1-a), u_{j,k} = j/(k+1).
// Requires 2 <= i <= k, a != 1.
SpacingBoundTerms spacing_bound_terms(std::size_t i, std::size_t k, double a);

// The same terms from prefix sums, O(1) per (i, k) once built.
class SpacingBoundTable {
 public:
  SpacingBoundTable(std::size_t k_max, double a);
  SpacingBoundTerms at(std::size_t i, std::size_t k) const;
  std::size_t k_max() const { return harmonic_.size() - 1; }

 private:
  double a_;
  std::vector<double> harmonic_;  // Σ_{j=1}^m 1/j
  std::vector<double> powers_;    // Σ_{j=2}^m j^{-a}
};

}  // namespace tailcens
