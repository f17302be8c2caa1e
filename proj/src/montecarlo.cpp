#include "tailcens/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>

#include "tailcens/asymptotics.hpp"
#include "tailcens/errors.hpp"
#include "tailcens/goodness_of_fit.hpp"
#include "tailcens/text_io.hpp"

namespace tailcens {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double median_of(std::vector<double>& v) {
  if (v.empty()) return kNaN;
  const auto mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  const double upper = v[mid];
  if (v.size() % 2 == 1) return upper;
  const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

}  // namespace

void MCConfig::validate() const {
  if (replicates == 0) throw std::invalid_argument("replicates must be >= 1");
  if (n < 3) throw std::invalid_argument("sample size must be >= 3");
  if (k_grid.empty()) throw std::invalid_argument("k grid is empty");
  for (auto k : k_grid)
    if (k < 2 || k + 1 > n)
      throw std::invalid_argument("k = " + std::to_string(k) + " outside [2, n-1]");
  if (estimators.empty()) throw std::invalid_argument("no estimators given");
}

nlohmann::json MCConfig::to_json() const {
  nlohmann::json ests = nlohmann::json::array();
  for (const auto& e : estimators) ests.push_back(e.name());
  return {{"model", {{"target", model.target.to_json()}, {"censor", model.censor.to_json()}}},
          {"n", n},
          {"replicates", replicates},
          {"k_grid", k_grid},
          {"estimators", ests},
          {"seed", seed}};
}

MCConfig MCConfig::from_json(const nlohmann::json& j) {
  try {
    const auto& m = j.at("model");
    MCConfig c{CensorModel{HeavyTailDist::from_json(m.at("target")),
                           HeavyTailDist::from_json(m.at("censor"))},
               j.value("n", std::size_t{500}),
               j.value("replicates", std::size_t{2000}),
               {},
               {},
               j.value("seed", kDefaultSeed)};
    if (j.contains("k_grid")) {
      c.k_grid = j.at("k_grid").get<std::vector<std::size_t>>();
    } else if (j.contains("k_min") || j.contains("k_max")) {
      const std::size_t lo = j.value("k_min", std::size_t{2});
      const std::size_t hi = j.value("k_max", c.n - 1);
      const std::size_t step = j.value("k_step", std::size_t{1});
      if (step == 0) throw std::invalid_argument("k_step must be >= 1");
      for (std::size_t k = lo; k <= hi; k += step) c.k_grid.push_back(k);
    } else {
      c.k_grid = default_k_grid(c.n);
    }
    if (j.contains("estimators")) {
      for (const auto& e : j.at("estimators"))
        c.estimators.push_back(EstimatorSpec::parse(e.get<std::string>()));
    } else {
      c.estimators = study_estimators();
    }
    c.validate();
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad experiment config: ") + e.what());
  }
}

std::vector<std::size_t> default_k_grid(std::size_t n) {
  std::vector<std::size_t> grid;
  if (n < 36) {
    for (std::size_t k = 2; k + 1 <= n; ++k) grid.push_back(k);
    return grid;
  }
  for (std::size_t k = 10; k + 25 <= n; k += 5) grid.push_back(k);
  return grid;
}

std::vector<EstimatorSpec> study_estimators() {
  return {EstimatorSpec::hill(),
          EstimatorSpec::gamma_w(),
          EstimatorSpec::gamma_beta(-1.0),
          EstimatorSpec::gamma_beta(0.5),
          EstimatorSpec::gamma_beta(1.5),
          EstimatorSpec::bias_reduced(-1.5),
          EstimatorSpec::bias_reduced(-2.0)};
}

void MCSummary::write_csv(std::ostream& out) const {
  out << "estimator,k,median_bias,mse,valid_count\n";
  for (const auto& s : series) {
    const auto name = s.estimator.name();
    for (const auto& c : s.cells)
      out << name << ',' << c.k << ',' << format_double(c.median_bias) << ','
          << format_double(c.mse) << ',' << c.valid_count << '\n';
  }
}

nlohmann::json MCSummary::to_json() const {
  nlohmann::json results = nlohmann::json::array();
  for (const auto& s : series) {
    nlohmann::json ks = nlohmann::json::array(), bias = nlohmann::json::array(),
                   mse = nlohmann::json::array(), valid = nlohmann::json::array();
    for (const auto& c : s.cells) {
      ks.push_back(c.k);
      bias.push_back(c.median_bias);
      mse.push_back(c.mse);
      valid.push_back(c.valid_count);
    }
    results.push_back({{"estimator", s.estimator.name()},
                       {"target", s.target},
                       {"k", ks},
                       {"median_bias", bias},
                       {"mse", mse},
                       {"valid_count", valid}});
  }
  return {{"config", config.to_json()}, {"gamma1", gamma1}, {"p", p}, {"results", results}};
}

void for_each_replicate(std::size_t count, unsigned threads,
                        const std::function<void(std::size_t)>& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
  if (threads <= 1) {
    for (std::size_t r = 0; r < count; ++r) fn(r);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  std::mutex failure_mutex;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t r; !failed && (r = next.fetch_add(1)) < count;) {
        try {
          fn(r);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          failed = true;
        }
      }
    });
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

MCSummary run_experiment(const MCConfig& config, unsigned threads) {
  config.validate();
  const auto hall_x = hall_params(config.model.target);
  const auto hall_c = hall_params(config.model.censor);
  const double gamma1 = hall_x.gamma;
  const std::size_t n_est = config.estimators.size();
  const std::size_t n_k = config.k_grid.size();
  const std::size_t cells = n_est * n_k;

  std::vector<double> targets(n_est);
  for (std::size_t e = 0; e < n_est; ++e) targets[e] = config.estimators[e].target(gamma1);

  // errors[r * cells + e * n_k + ik], NaN marks a failed replicate.
  std::vector<double> errors(config.replicates * cells, kNaN);
  for_each_replicate(config.replicates, threads, [&](std::size_t r) {
    Stream rng(substream_seed(config.seed, r));
    const TailEstimator est(draw_sample(config.model, rng, config.n));
    double* row = errors.data() + r * cells;
    for (std::size_t e = 0; e < n_est; ++e) {
      for (std::size_t ik = 0; ik < n_k; ++ik) {
        const auto res = est.evaluate(config.estimators[e], config.k_grid[ik]);
        if (res.ok() && std::isfinite(res.value)) row[e * n_k + ik] = res.value - targets[e];
      }
    }
  });

  MCSummary summary{config, gamma1, theoretical_p(gamma1, hall_c.gamma), {}};
  std::vector<double> column;
  column.reserve(config.replicates);
  for (std::size_t e = 0; e < n_est; ++e) {
    MCSeries s{config.estimators[e], targets[e], {}};
    for (std::size_t ik = 0; ik < n_k; ++ik) {
      column.clear();
      double sq = 0.0;
      for (std::size_t r = 0; r < config.replicates; ++r) {
        const double err = errors[r * cells + e * n_k + ik];
        if (std::isnan(err)) continue;
        column.push_back(err);
        sq += err * err;
      }
      const std::size_t valid = column.size();
      const double mse = valid ? sq / static_cast<double>(valid) : kNaN;
      s.cells.push_back({config.k_grid[ik], median_of(column), mse, valid});
    }
    summary.series.push_back(std::move(s));
  }
  return summary;
}

CltResult clt_check(const CensorModel& model, std::size_t n, std::size_t k, double beta,
                    std::size_t replicates, std::uint64_t seed, unsigned threads,
                    KMWeighting weighting) {
  if (replicates == 0) throw std::invalid_argument("replicates must be >= 1");
  if (k < 2 || k + 1 > n) throw IndexError("clt_check needs 2 <= k <= n-1");
  const auto params = AsymptoticParams::from_model(model, beta, k, n);
  const double sigma = std::sqrt(sigma2_t(params.gamma, params.p, beta));
  const double shift = params.lambda == 0.0 ? 0.0 : params.lambda * m_t(params);
  const double centre = params.gamma1 / (1.0 + params.gamma1 * beta);
  const double root_k = std::sqrt(static_cast<double>(k));

  std::vector<double> raw(replicates, kNaN);
  for_each_replicate(replicates, threads, [&](std::size_t r) {
    Stream rng(substream_seed(seed, r));
    const TailEstimator est(draw_sample(model, rng, n), weighting);
    raw[r] = (root_k * (est.t_stat(k, beta) - centre) - shift) / sigma;
  });

  CltResult out{{}, 0.0, params.lambda, shift, sigma, 0};
  out.standardized.reserve(replicates);
  for (double v : raw) {
    if (std::isfinite(v))
      out.standardized.push_back(v);
    else
      ++out.failed_replicates;
  }
  out.ks_statistic = ks_statistic(out.standardized, standard_normal_cdf);
  return out;
}

double renyi_diagnostic(std::size_t n, std::size_t k, std::uint64_t seed) {
  if (k < 2 || k + 1 > n) throw IndexError("renyi_diagnostic needs 2 <= k <= n-1");
  Stream rng(seed);
  auto y = sample(HeavyTailDist::pareto(1.0, 1.0), rng, n);
  std::sort(y.begin(), y.end());
  // y[n - j] is Y_{n-j+1,n} in 1-based order statistics.
  std::vector<double> spacings(k);
  for (std::size_t j = 1; j <= k; ++j)
    spacings[j - 1] = static_cast<double>(j) * std::log(y[n - j] / y[n - j - 1]);
  return ks_statistic(std::move(spacings), [](double x) { return x <= 0.0 ? 0.0 : -std::expm1(-x); });
}

CoverageResult ci_coverage(const CensorModel& model, std::size_t n, std::size_t k,
                           const EstimatorSpec& spec, double level, std::size_t replicates,
                           std::uint64_t seed, unsigned threads, KMWeighting weighting) {
  if (replicates == 0) throw std::invalid_argument("replicates must be >= 1");
  const double target = spec.target(hall_params(model.target).gamma);
  // 1 covered, 0 missed, -1 no interval.
  std::vector<int> hit(replicates, -1);
  for_each_replicate(replicates, threads, [&](std::size_t r) {
    Stream rng(substream_seed(seed, r));
    const TailEstimator est(draw_sample(model, rng, n), weighting);
    const auto res = est.evaluate(spec, k, level);
    if (res.ok() && res.ci_low && res.ci_high)
      hit[r] = (*res.ci_low <= target && target <= *res.ci_high) ? 1 : 0;
  });
  std::size_t covered = 0, intervals = 0;
  for (int h : hit) {
    if (h >= 0) ++intervals;
    if (h == 1) ++covered;
  }
  return {static_cast<double>(covered) / static_cast<double>(replicates), intervals, replicates};
}

}  // namespace tailcens
