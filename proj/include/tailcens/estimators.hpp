#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tailcens/censoring.hpp"
#include "tailcens/kaplan_meier.hpp"

namespace tailcens {

// One member of the estimator family.
//   W            Kaplan-Meier weighted log-spacings, T̂ₖ(0)
//   H            pseudo maximum likelihood, Hill / p̂
//   T:beta=b     the raw statistic T̂ₖ(b) (targets γ1/(1+γ1 b))
//   G:beta=b     T̂ₖ(b) / (1 - b T̂ₖ(b))
//   BR:rho1=r    bias-reduced W with β1 γ̂ reparametrized as -r
struct EstimatorSpec {
  enum class Kind { kTStat, kGammaBeta, kGammaW, kHill, kBiasReduced };

  Kind kind = Kind::kGammaW;
  double param = 0.0;  // beta for kTStat/kGammaBeta, rho1 for kBiasReduced

  static EstimatorSpec t_stat(double beta) { return {Kind::kTStat, beta}; }
  static EstimatorSpec gamma_beta(double beta) { return {Kind::kGammaBeta, beta}; }
  static EstimatorSpec gamma_w() { return {Kind::kGammaW, 0.0}; }
  static EstimatorSpec hill() { return {Kind::kHill, 0.0}; }
  // Throws DomainError unless rho1 < 0.
  static EstimatorSpec bias_reduced(double rho1);

  // Throws DomainError on anything outside the grammar above.
  static EstimatorSpec parse(std::string_view text);
  std::string name() const;

  // Tuning parameter of the T̂ₖ statistic the estimator is built on, or
  // nullopt when it depends on the data (BR) or is not a T̂ₖ (H).
  std::optional<double> beta() const;

  // What the estimator converges to when X has extreme value index gamma1.
  double target(double gamma1) const;

  friend bool operator==(const EstimatorSpec&, const EstimatorSpec&) = default;
};

struct EstimateFlags {
  bool denominator_near_zero = false;  // |1 - βT̂| below kSingularTolerance
  bool negative_estimate = false;
  bool beta_below_validity = false;  // β <= -1/γ̂
  bool outside_theorem = false;      // p̂_β <= 1/2, no standard error reported

  std::uint32_t bits() const;
  std::string to_string() const;  // "|"-joined names, empty when clear
};

struct EstimateResult {
  std::size_t k = 0;
  double value = 0.0;  // NaN when error is set
  std::optional<double> std_error;  // plug-in σ̂/√k, first order only
  std::optional<double> ci_low;
  std::optional<double> ci_high;
  double p_hat = 0.0;
  EstimateFlags flags;
  std::optional<std::string> error;

  bool ok() const { return !error.has_value(); }
};

inline constexpr double kSingularTolerance = 1e-8;
inline constexpr double kBoxCoxSmallBeta = 1e-8;

// ∫₁ᵘ t^{-β-1} dt. Throws DomainError for u < 1.
double box_cox(double u, double beta);

// t / (1 - βt); throws SingularEstimate when |1 - βt| < kSingularTolerance.
double gamma_from_t(double t, double beta);

// g - ((1-ρ1)²(1-2ρ1)/ρ1²) (t - g/(1-ρ1)), where t = T̂ₖ(-ρ1/g).
double bias_reduction(double gamma_w, double t_at_reparam, double rho1);

// Estimators on one censored sample. The Kaplan-Meier curve is computed once
// at construction and shared by every k.
class TailEstimator {
 public:
  explicit TailEstimator(CensoredSample sample, KMWeighting weighting = KMWeighting::kDropTop);

  const CensoredSample& sample() const { return sample_; }
  const KMCurve& curve() const { return curve_; }
  std::size_t size() const { return sample_.size(); }
  KMWeighting weighting() const { return weighting_; }

  // T̂ₖ(β). Requires 2 <= k <= n-1 (1 <= k with kLeftLimit).
  double t_stat(std::size_t k, double beta) const;
  // T̂/(1 - βT̂); throws SingularEstimate when |1 - βT̂| < kSingularTolerance.
  double gamma_beta(std::size_t k, double beta) const;
  double gamma_w(std::size_t k) const;
  // Fraction of uncensored among the top k, 1 <= k <= n.
  double p_hat(std::size_t k) const;
  // Throws AllCensored when p̂ = 0. Requires 1 <= k <= n-1.
  double gamma_hill(std::size_t k) const;
  // Throws UndefinedReparametrization when γ̂⁽ᵂ⁾ <= 0, DomainError unless rho1 < 0.
  double gamma_br(std::size_t k, double rho1) const;

  // Value plus plug-in standard error, and a confidence interval when level
  // is given. Estimator failures are reported in the result; an out-of-range
  // k still throws IndexError.
  EstimateResult evaluate(const EstimatorSpec& spec, std::size_t k,
                          std::optional<double> level = std::nullopt) const;

  // One result per k in k_min, k_min + k_step, ..., <= k_max.
  std::vector<EstimateResult> sweep(const EstimatorSpec& spec, std::size_t k_min,
                                    std::size_t k_max, std::size_t k_step = 1,
                                    std::optional<double> level = std::nullopt) const;

 private:
  void check_k(std::size_t k, std::size_t k_min_allowed, const char* what) const;
  double hill_mean(std::size_t k) const;

  CensoredSample sample_;
  KMWeighting weighting_;
  KMCurve curve_;
  std::vector<std::size_t> uncensored_prefix_;  // count of δ=1 among Z_{1..i}
};

// Free-function forms, each building the Kaplan-Meier curve afresh.
double t_stat(const CensoredSample& sample, std::size_t k, double beta);
EstimateResult gamma_beta(const CensoredSample& sample, std::size_t k, double beta);
EstimateResult gamma_w(const CensoredSample& sample, std::size_t k);
double p_hat(const CensoredSample& sample, std::size_t k);
EstimateResult gamma_hill(const CensoredSample& sample, std::size_t k);
EstimateResult gamma_br(const CensoredSample& sample, std::size_t k, double rho1);
std::vector<EstimateResult> sweep(const CensoredSample& sample, const EstimatorSpec& spec,
                                  std::size_t k_min, std::size_t k_max, std::size_t k_step = 1);

}  // namespace tailcens
