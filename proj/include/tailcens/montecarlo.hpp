#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include <nlohmann/json.hpp>

#include "tailcens/censoring.hpp"
#include "tailcens/estimators.hpp"

namespace tailcens {

inline constexpr std::uint64_t kDefaultSeed = 20190417;

struct MCConfig {
  CensorModel model;
  std::size_t n = 500;
  std::size_t replicates = 2000;
  std::vector<std::size_t> k_grid;
  std::vector<EstimatorSpec> estimators;
  std::uint64_t seed = kDefaultSeed;

  // Throws std::invalid_argument when replicates == 0, n < 3, the grid is
  // empty or leaves [2, n-1], or no estimator is given.
  void validate() const;

  nlohmann::json to_json() const;
  // Keys: "model": {"target": dist, "censor": dist}, "n", "replicates",
  // "k_grid" (or "k_min"/"k_max"/"k_step"), "estimators", "seed".
  static MCConfig from_json(const nlohmann::json& j);
};

// Every 5th k in [10, n-25].
std::vector<std::size_t> default_k_grid(std::size_t n);

// The estimator set compared in the finite-sample study.
std::vector<EstimatorSpec> study_estimators();

struct MCCell {
  std::size_t k;
  double median_bias;  // median of (estimate - target) over valid replicates
  double mse;          // mean of (estimate - target)² over valid replicates
  std::size_t valid_count;
};

struct MCSeries {
  EstimatorSpec estimator;
  double target;
  std::vector<MCCell> cells;  // aligned with config.k_grid
};

struct MCSummary {
  MCConfig config;
  double gamma1;
  double p;
  std::vector<MCSeries> series;  // aligned with config.estimators

  // Header "estimator,k,median_bias,mse,valid_count".
  void write_csv(std::ostream& out) const;
  nlohmann::json to_json() const;
};

// Runs fn(r) for r in [0, count) on up to `threads` workers (0 = hardware
// concurrency). fn must only write state owned by index r.
void for_each_replicate(std::size_t count, unsigned threads,
                        const std::function<void(std::size_t)>& fn);

// Replicate r draws its sample from Stream(substream_seed(seed, r)), so the
// summary depends on the config alone, never on scheduling.
MCSummary run_experiment(const MCConfig& config, unsigned threads = 0);

struct CltResult {
  std::vector<double> standardized;  // (√k (T̂ - γ1/(1+γ1β)) - λ m_β) / σ_β
  double ks_statistic;
  double lambda;
  double mean_shift;  // λ m_β
  double sigma;       // σ_β
  std::size_t failed_replicates;
};

// Throws TheoremConditionViolated when p_β <= 1/2 for the model.
CltResult clt_check(const CensorModel& model, std::size_t n, std::size_t k, double beta,
                    std::size_t replicates, std::uint64_t seed, unsigned threads = 0,
                    KMWeighting weighting = KMWeighting::kDropTop);

// KS distance between the scaled log-spacings j log(Y_{n-j+1,n}/Y_{n-j,n}),
// 1 <= j <= k, of a standard Pareto sample and Exp(1).
double renyi_diagnostic(std::size_t n, std::size_t k, std::uint64_t seed);

struct CoverageResult {
  double coverage;          // fraction of intervals containing the target
  std::size_t intervals;    // replicates where an interval was available
  std::size_t replicates;
};

// Empirical coverage of the plug-in intervals of `spec` at a single k.
CoverageResult ci_coverage(const CensorModel& model, std::size_t n, std::size_t k,
                           const EstimatorSpec& spec, double level, std::size_t replicates,
                           std::uint64_t seed, unsigned threads = 0,
                           KMWeighting weighting = KMWeighting::kDropTop);

}  // namespace tailcens
