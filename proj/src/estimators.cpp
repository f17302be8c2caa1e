#include "tailcens/estimators.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "tailcens/asymptotics.hpp"
#include "tailcens/errors.hpp"
#include "tailcens/text_io.hpp"

namespace tailcens {
namespace {

// Box-Cox transform expressed through a = log u.
double box_cox_log(double a, double beta) {
  if (beta == 0.0) return a;
  if (std::abs(beta) < kBoxCoxSmallBeta) return a - 0.5 * beta * a * a;
  return -std::expm1(-beta * a) / beta;
}

double parse_keyed(std::string_view body, std::string_view key, std::string_view text) {
  const auto eq = body.find('=');
  if (eq == std::string_view::npos || trim(body.substr(0, eq)) != key)
    throw DomainError("estimator '" + std::string(text) + "': expected '" + std::string(key) +
                      "=<number>'");
  try {
    return parse_double(body.substr(eq + 1));
  } catch (const std::invalid_argument& e) {
    throw DomainError("estimator '" + std::string(text) + "': " + e.what());
  }
}

}  // namespace

EstimatorSpec EstimatorSpec::bias_reduced(double rho1) {
  if (!(rho1 < 0.0) || !std::isfinite(rho1))
    throw DomainError("bias reduction needs rho1 < 0, got " + format_double(rho1));
  return {Kind::kBiasReduced, rho1};
}

EstimatorSpec EstimatorSpec::parse(std::string_view text) {
  const auto t = trim(text);
  if (t == "W") return gamma_w();
  if (t == "H") return hill();
  const auto colon = t.find(':');
  if (colon != std::string_view::npos) {
    const auto head = t.substr(0, colon);
    const auto body = t.substr(colon + 1);
    if (head == "T") return t_stat(parse_keyed(body, "beta", text));
    if (head == "G") return gamma_beta(parse_keyed(body, "beta", text));
    if (head == "BR") return bias_reduced(parse_keyed(body, "rho1", text));
  }
  throw DomainError("unknown estimator '" + std::string(text) +
                    "' (expected W, H, T:beta=<f>, G:beta=<f> or BR:rho1=<f>)");
}

std::string EstimatorSpec::name() const {
  switch (kind) {
    case Kind::kTStat:
      return "T:beta=" + format_double(param);
    case Kind::kGammaBeta:
      return "G:beta=" + format_double(param);
    case Kind::kGammaW:
      return "W";
    case Kind::kHill:
      return "H";
    case Kind::kBiasReduced:
      return "BR:rho1=" + format_double(param);
  }
  return "?";
}

std::optional<double> EstimatorSpec::beta() const {
  switch (kind) {
    case Kind::kTStat:
    case Kind::kGammaBeta:
      return param;
    case Kind::kGammaW:
      return 0.0;
    default:
      return std::nullopt;
  }
}

double EstimatorSpec::target(double gamma1) const {
  if (kind == Kind::kTStat) return gamma1 / (1.0 + gamma1 * param);
  return gamma1;
}

std::uint32_t EstimateFlags::bits() const {
  return (denominator_near_zero ? 1u : 0u) | (negative_estimate ? 2u : 0u) |
         (beta_below_validity ? 4u : 0u) | (outside_theorem ? 8u : 0u);
}

std::string EstimateFlags::to_string() const {
  std::string out;
  auto add = [&](bool on, const char* name) {
    if (!on) return;
    if (!out.empty()) out += '|';
    out += name;
  };
  add(denominator_near_zero, "singular");
  add(negative_estimate, "negative");
  add(beta_below_validity, "beta_below_validity");
  add(outside_theorem, "outside_theorem");
  return out;
}

double box_cox(double u, double beta) {
  if (!(u >= 1.0)) throw DomainError("box_cox needs u >= 1, got " + format_double(u));
  return box_cox_log(std::log(u), beta);
}

TailEstimator::TailEstimator(CensoredSample sample, KMWeighting weighting)
    : sample_(std::move(sample)), weighting_(weighting), curve_(km_survival(sample_)) {
  uncensored_prefix_.resize(sample_.size() + 1, 0);
  for (std::size_t i = 1; i <= sample_.size(); ++i)
    uncensored_prefix_[i] = uncensored_prefix_[i - 1] + (sample_.uncensored(i) ? 1 : 0);
}

void TailEstimator::check_k(std::size_t k, std::size_t k_min_allowed, const char* what) const {
  if (k < k_min_allowed || k + 1 > size())
    throw IndexError(std::string(what) + " needs " + std::to_string(k_min_allowed) +
                     " <= k <= n-1 (k=" + std::to_string(k) + ", n=" + std::to_string(size()) +
                     ")");
}

double TailEstimator::t_stat(std::size_t k, double beta) const {
  const bool drop_top = weighting_ == KMWeighting::kDropTop;
  const std::size_t j_first = drop_top ? 2 : 1;
  check_k(k, j_first, "t_stat");
  const std::size_t n = size();
  const double threshold = sample_.order_stat(n - k);
  // Upper end of spacing j is Z_{n-j+1}; its weight is F̄ᴷᴹ at Z_{n-j+1}
  // (drop-top) or at the left limit Z_{n-j} (left-limit variant).
  double sum = 0.0;
  if (beta == 0.0) {
    for (std::size_t j = k; j >= j_first; --j) {
      const double w = curve_.value(drop_top ? n - j + 1 : n - j);
      sum += w * std::log(sample_.order_stat(n - j + 1) / sample_.order_stat(n - j));
    }
  } else {
    double lower = 0.0;  // transform at Z_{n-j}, zero at the threshold itself
    for (std::size_t j = k; j >= j_first; --j) {
      const double upper = box_cox_log(std::log(sample_.order_stat(n - j + 1) / threshold), beta);
      const double w = curve_.value(drop_top ? n - j + 1 : n - j);
      sum += w * (upper - lower);
      lower = upper;
    }
  }
  return sum / curve_.value(n - k);
}

double gamma_from_t(double t, double beta) {
  const double denom = 1.0 - beta * t;
  if (std::abs(denom) < kSingularTolerance) throw SingularEstimate(t, beta);
  return t / denom;
}

double bias_reduction(double gamma_w, double t_at_reparam, double rho1) {
  const double one_minus = 1.0 - rho1;
  const double factor = one_minus * one_minus * (1.0 - 2.0 * rho1) / (rho1 * rho1);
  return gamma_w - factor * (t_at_reparam - gamma_w / one_minus);
}

double TailEstimator::gamma_beta(std::size_t k, double beta) const {
  return gamma_from_t(t_stat(k, beta), beta);
}

double TailEstimator::gamma_w(std::size_t k) const { return t_stat(k, 0.0); }

double TailEstimator::p_hat(std::size_t k) const {
  if (k < 1 || k > size()) throw IndexError("p_hat needs 1 <= k <= n");
  const std::size_t n = size();
  return static_cast<double>(uncensored_prefix_[n] - uncensored_prefix_[n - k]) /
         static_cast<double>(k);
}

double TailEstimator::hill_mean(std::size_t k) const {
  const std::size_t n = size();
  const double threshold = sample_.order_stat(n - k);
  double sum = 0.0;
  for (std::size_t i = 1; i <= k; ++i) sum += std::log(sample_.order_stat(n - i + 1) / threshold);
  return sum / static_cast<double>(k);
}

double TailEstimator::gamma_hill(std::size_t k) const {
  check_k(k, 1, "gamma_hill");
  const double p = p_hat(k);
  if (p == 0.0) throw AllCensored(k);
  return hill_mean(k) / p;
}

double TailEstimator::gamma_br(std::size_t k, double rho1) const {
  if (!(rho1 < 0.0)) throw DomainError("gamma_br needs rho1 < 0, got " + format_double(rho1));
  const double g = gamma_w(k);
  if (!(g > 0.0)) throw UndefinedReparametrization(g);
  return bias_reduction(g, t_stat(k, -rho1 / g), rho1);
}

EstimateResult TailEstimator::evaluate(const EstimatorSpec& spec, std::size_t k,
                                       std::optional<double> level) const {
  using Kind = EstimatorSpec::Kind;
  EstimateResult r;
  r.k = k;
  const std::size_t k_min_allowed =
      (spec.kind == Kind::kHill || weighting_ == KMWeighting::kLeftLimit) ? 1 : 2;
  check_k(k, k_min_allowed, "evaluate");
  r.p_hat = p_hat(k);
  const double p = r.p_hat;

  // γ̂(β) itself always lies below -1/β for β < 0, so validity is judged
  // against the β-free pilot γ̂⁽ᵂ⁾.
  if (const auto b = spec.beta(); b && *b < 0.0 && k >= 2) {
    const double pilot = t_stat(k, 0.0);
    if (pilot > 0.0 && *b * pilot <= -1.0) r.flags.beta_below_validity = true;
  }

  std::optional<double> sigma2;
  try {
    switch (spec.kind) {
      case Kind::kTStat: {
        r.value = t_stat(k, spec.param);
        const double denom = 1.0 - spec.param * r.value;
        if (std::abs(denom) < kSingularTolerance) {
          r.flags.denominator_near_zero = true;
          break;
        }
        const double g1 = r.value / denom;
        if (g1 > 0.0 && p > 0.0) {
          const double pb = p * (1.0 + g1 * spec.param);
          if (pb > 0.5)
            sigma2 = sigma2_t(p * g1, p, spec.param);
          else
            r.flags.outside_theorem = true;
        }
        break;
      }
      case Kind::kGammaBeta:
      case Kind::kGammaW: {
        const double beta = spec.kind == Kind::kGammaW ? 0.0 : spec.param;
        r.value = gamma_beta(k, beta);
        if (r.value > 0.0) {
          const double pb = p * (1.0 + r.value * beta);
          if (pb > 0.5)
            sigma2 = sigma2_gamma(r.value, p, beta);
          else
            r.flags.outside_theorem = true;
        }
        break;
      }
      case Kind::kHill:
        r.value = gamma_hill(k);
        sigma2 = sigma2_hill(r.value, p);
        break;
      case Kind::kBiasReduced:
        r.value = gamma_br(k, spec.param);
        if (p > 0.5 && r.value > 0.0)
          sigma2 = sigma2_br(r.value, p, -p * spec.param);
        else
          r.flags.outside_theorem = true;
        break;
    }
  } catch (const SingularEstimate& e) {
    r.flags.denominator_near_zero = true;
    r.error = e.what();
  } catch (const AllCensored& e) {
    r.error = e.what();
  } catch (const UndefinedReparametrization& e) {
    r.error = e.what();
  }
  if (r.error) {
    r.value = std::numeric_limits<double>::quiet_NaN();
    return r;
  }
  if (r.value < 0.0) r.flags.negative_estimate = true;
  if (sigma2) {
    r.std_error = std::sqrt(*sigma2 / static_cast<double>(k));
    if (level) {
      const auto ci = normal_interval(r.value, *sigma2, k, *level);
      r.ci_low = ci.low;
      r.ci_high = ci.high;
    }
  }
  return r;
}

std::vector<EstimateResult> TailEstimator::sweep(const EstimatorSpec& spec, std::size_t k_min,
                                                 std::size_t k_max, std::size_t k_step,
                                                 std::optional<double> level) const {
  if (k_step == 0 || k_min > k_max)
    throw std::invalid_argument("sweep needs k_min <= k_max and k_step >= 1");
  if (k_min < 2 || k_max + 1 > size())
    throw IndexError("sweep needs 2 <= k_min <= k_max <= n-1");
  std::vector<EstimateResult> out;
  out.reserve((k_max - k_min) / k_step + 1);
  for (std::size_t k = k_min; k <= k_max; k += k_step) out.push_back(evaluate(spec, k, level));
  return out;
}

double t_stat(const CensoredSample& sample, std::size_t k, double beta) {
  return TailEstimator(sample).t_stat(k, beta);
}

EstimateResult gamma_beta(const CensoredSample& sample, std::size_t k, double beta) {
  const TailEstimator est(sample);
  est.gamma_beta(k, beta);  // surfaces SingularEstimate
  return est.evaluate(EstimatorSpec::gamma_beta(beta), k);
}

EstimateResult gamma_w(const CensoredSample& sample, std::size_t k) {
  return TailEstimator(sample).evaluate(EstimatorSpec::gamma_w(), k);
}

double p_hat(const CensoredSample& sample, std::size_t k) {
  return TailEstimator(sample).p_hat(k);
}

EstimateResult gamma_hill(const CensoredSample& sample, std::size_t k) {
  const TailEstimator est(sample);
  est.gamma_hill(k);  // surfaces AllCensored
  return est.evaluate(EstimatorSpec::hill(), k);
}

EstimateResult gamma_br(const CensoredSample& sample, std::size_t k, double rho1) {
  const TailEstimator est(sample);
  est.gamma_br(k, rho1);  // surfaces UndefinedReparametrization
  return est.evaluate(EstimatorSpec::bias_reduced(rho1), k);
}

std::vector<EstimateResult> sweep(const CensoredSample& sample, const EstimatorSpec& spec,
                                  std::size_t k_min, std::size_t k_max, std::size_t k_step) {
  return TailEstimator(sample).sweep(spec, k_min, k_max, k_step);
}

}  // namespace tailcens
