#include "tailcens/asymptotics.hpp"

#include <cmath>
#include <string>

#include <boost/math/distributions/normal.hpp>

#include "tailcens/errors.hpp"
#include "tailcens/text_io.hpp"

namespace tailcens {
namespace {

void require_theorem(double p_beta) {
  if (!(p_beta > 0.5)) throw TheoremConditionViolated(p_beta);
}

// m_β without the (1+βγ1)² factor, shared by m_t and m_gamma.
double bias_core(const AsymptoticParams& a) {
  require_theorem(a.p_beta());
  if (!a.hall_f.second_order) return 0.0;
  const double beta1 = a.hall_f.second_order->rate;
  const double d1 = a.hall_f.second_order->D;
  if (a.hall_g.second_order && beta1 > a.hall_g.second_order->rate) return 0.0;
  const double pb = a.p_beta();
  return -a.gamma * a.gamma * beta1 * d1 * std::pow(a.hall_z.C, -a.gamma * beta1) /
         (pb * (pb + a.gamma * beta1));
}

}  // namespace

AsymptoticParams AsymptoticParams::from_model(const CensorModel& model, double beta,
                                              std::size_t k, std::size_t n) {
  AsymptoticParams a{};
  a.hall_f = hall_params(model.target);
  a.hall_g = hall_params(model.censor);
  a.hall_z = combined_hall(a.hall_f, a.hall_g);
  a.gamma1 = a.hall_f.gamma;
  a.gamma2 = a.hall_g.gamma;
  a.gamma = a.hall_z.gamma;
  a.p = theoretical_p(a.gamma1, a.gamma2);
  a.beta = beta;
  a.lambda = a.hall_z.second_order
                 ? lambda_bias(k, n, a.gamma * a.hall_z.second_order->rate).value
                 : 0.0;
  return a;
}

double sigma2_t(double gamma, double p, double beta) {
  const double pb = p + gamma * beta;
  require_theorem(pb);
  return gamma * gamma / (pb * pb) * p / (2.0 * pb - 1.0);
}

double m_t(const AsymptoticParams& params) { return bias_core(params); }

double sigma2_gamma(double gamma1, double p, double beta) {
  const double gamma = p * gamma1;
  const double scale = 1.0 + beta * gamma1;
  const double s2 = scale * scale;
  return sigma2_t(gamma, p, beta) * s2 * s2;
}

double sigma2_gamma_factored(double gamma1, double p, double beta) {
  const double pb = p * (1.0 + gamma1 * beta);
  require_theorem(pb);
  if (p == 0.5) throw DomainError("factored variance form undefined at p = 1/2");
  const double scale = 1.0 + beta * gamma1;
  return gamma1 * gamma1 * (p / (2.0 * p - 1.0)) * scale * scale * (2.0 * p - 1.0) /
         (2.0 * pb - 1.0);
}

double m_gamma(const AsymptoticParams& params) {
  const double scale = 1.0 + params.beta * params.gamma1;
  return bias_core(params) * scale * scale;
}

double sigma2_br(double gamma1, double p, double delta) {
  if (!(p > 0.5) || !(p <= 1.0))
    throw DomainError("bias-reduced variance needs 1/2 < p <= 1, got p = " + format_double(p));
  if (!(delta > 0.0)) throw DomainError("bias-reduced variance needs delta > 0");
  const double q = p + delta;
  const double num = q * q * (q * q + (1.0 - p) * (1.0 - p) + delta + delta * delta);
  const double den = delta * delta * (2.0 * p - 1.0 + delta) * (2.0 * p - 1.0 + 2.0 * delta);
  return gamma1 * gamma1 * p / (2.0 * p - 1.0) * num / den;
}

double sigma2_hill(double gamma1, double p) {
  if (!(p > 0.0) || !(p <= 1.0))
    throw DomainError("Hill variance needs 0 < p <= 1, got p = " + format_double(p));
  return gamma1 * gamma1 / p;
}

LambdaBias lambda_bias(std::size_t k, std::size_t n, double gamma_beta_star) {
  if (k < 1 || k > n) throw IndexError("lambda_bias needs 1 <= k <= n");
  const double kd = static_cast<double>(k);
  return {std::sqrt(kd) * std::pow(kd / static_cast<double>(n), gamma_beta_star),
          gamma_beta_star == 0.0};
}

double normal_critical_value(double level) {
  if (!(level >= 0.0 && level < 1.0))
    throw DomainError("confidence level must lie in [0,1), got " + format_double(level));
  if (level == 0.0) return 0.0;
  return boost::math::quantile(boost::math::normal(), 0.5 * (1.0 + level));
}

Interval normal_interval(double value, double sigma2, std::size_t k, double level) {
  const double half =
      normal_critical_value(level) * std::sqrt(sigma2 / static_cast<double>(k));
  return {value - half, value + half};
}

Interval confidence_interval(double estimate, double p_hat, double beta, std::size_t k,
                             double level) {
  require_theorem(p_hat * (1.0 + estimate * beta));
  return normal_interval(estimate, sigma2_gamma(estimate, p_hat, beta), k, level);
}

SpacingBoundTerms spacing_bound_terms(std::size_t i, std::size_t k, double a) {
  if (i < 2 || i > k) throw IndexError("spacing_bound_terms needs 2 <= i <= k");
  if (a == 1.0) throw DomainError("spacing_bound_terms undefined at a = 1");
  const double id = static_cast<double>(i);
  const double k1 = static_cast<double>(k) + 1.0;
  SpacingBoundTerms t{};
  t.c_i = 1.0 + id * std::log1p(-1.0 / id);
  double harmonic = 0.0;
  for (std::size_t j = k; j >= i; --j) harmonic += 1.0 / static_cast<double>(j);
  t.harmonic_gap = harmonic - std::log(k1 / id);
  double powers = 0.0;
  for (std::size_t j = 2; j <= i; ++j) powers += std::pow(static_cast<double>(j) / k1, -a);
  t.d_ik = powers / id - std::pow(id / k1, -a) / (1.0 - a);
  return t;
}

SpacingBoundTable::SpacingBoundTable(std::size_t k_max, double a)
    : a_(a), harmonic_(k_max + 1, 0.0), powers_(k_max + 1, 0.0) {
  if (a == 1.0) throw DomainError("spacing_bound_terms undefined at a = 1");
  for (std::size_t m = 1; m <= k_max; ++m) {
    const double md = static_cast<double>(m);
    harmonic_[m] = harmonic_[m - 1] + 1.0 / md;
    powers_[m] = powers_[m - 1] + (m >= 2 ? std::pow(md, -a) : 0.0);
  }
}

SpacingBoundTerms SpacingBoundTable::at(std::size_t i, std::size_t k) const {
  if (i < 2 || i > k || k > k_max()) throw IndexError("SpacingBoundTable::at needs 2 <= i <= k <= k_max");
  const double id = static_cast<double>(i);
  const double k1 = static_cast<double>(k) + 1.0;
  SpacingBoundTerms t{};
  t.c_i = 1.0 + id * std::log1p(-1.0 / id);
  t.harmonic_gap = (harmonic_[k] - harmonic_[i - 1]) - std::log(k1 / id);
  t.d_ik = std::pow(k1, a_) * powers_[i] / id - std::pow(id / k1, -a_) / (1.0 - a_);
  return t;
}

}  // namespace tailcens
