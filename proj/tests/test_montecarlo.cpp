#include <cmath>
#include <sstream>

#include "catch_amalgamated.hpp"
#include "tailcens/goodness_of_fit.hpp"
#include "tailcens/montecarlo.hpp"

using namespace tailcens;

namespace {

MCConfig small_config() {
  return {{HeavyTailDist::burr(10, 2, 5), HeavyTailDist::burr(10, 4, 1)},
          200,
          40,
          {10, 50, 100, 150},
          study_estimators(),
          12345};
}

std::string csv_of(const MCSummary& s) {
  std::ostringstream os;
  s.write_csv(os);
  return os.str();
}

}  // namespace

TEST_CASE("replicate streams", "[montecarlo]") {
  CHECK(substream_seed(1, 0) != substream_seed(1, 1));
  CHECK(substream_seed(1, 0) != substream_seed(2, 0));
  CHECK(substream_seed(7, 3) == substream_seed(7, 3));
  Stream a(5), b(5);
  for (int i = 0; i < 1000; ++i) {
    const double u = a.uniform();
    REQUIRE(u == b.uniform());
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
  }
}

TEST_CASE("experiment summary shape", "[montecarlo]") {
  const auto config = small_config();
  const auto s = run_experiment(config, 1);
  CHECK(s.gamma1 == Catch::Approx(0.1));
  CHECK(s.p == Catch::Approx(5.0 / 7.0));
  REQUIRE(s.series.size() == config.estimators.size());
  for (const auto& series : s.series) {
    REQUIRE(series.cells.size() == config.k_grid.size());
    for (std::size_t i = 0; i < series.cells.size(); ++i) {
      const auto& c = series.cells[i];
      CHECK(c.k == config.k_grid[i]);
      CHECK(c.valid_count <= config.replicates);
      if (c.valid_count > 0) {
        CHECK(std::isfinite(c.mse));
        CHECK(c.mse >= 0.0);
      }
    }
    const auto kind = series.estimator.kind;
    if (kind == EstimatorSpec::Kind::kGammaW || kind == EstimatorSpec::Kind::kHill)
      for (const auto& c : series.cells) CHECK(c.valid_count == config.replicates);
  }
}

TEST_CASE("single replicate has zero spread", "[montecarlo]") {
  auto config = small_config();
  config.replicates = 1;
  const auto s = run_experiment(config, 1);
  for (const auto& series : s.series)
    for (const auto& c : series.cells)
      if (c.valid_count == 1) CHECK(c.mse == Catch::Approx(c.median_bias * c.median_bias));
}

TEST_CASE("results depend on the seed only", "[montecarlo]") {
  const auto config = small_config();
  const auto one = csv_of(run_experiment(config, 1));
  CHECK(one == csv_of(run_experiment(config, 1)));
  CHECK(one == csv_of(run_experiment(config, 3)));
  auto other = config;
  other.seed = 12346;
  CHECK(one != csv_of(run_experiment(other, 1)));

  std::vector<int> hits(100, 0);
  for_each_replicate(hits.size(), 4, [&](std::size_t r) { hits[r] += 1; });
  for (int h : hits) REQUIRE(h == 1);
}

TEST_CASE("summary serialization", "[montecarlo]") {
  const auto s = run_experiment(small_config(), 1);
  const auto csv = csv_of(s);
  CHECK(csv.rfind("estimator,k,median_bias,mse,valid_count\n", 0) == 0);
  std::size_t lines = 0;
  for (char ch : csv) lines += ch == '\n';
  CHECK(lines == 1 + s.series.size() * s.config.k_grid.size());
  const auto j = s.to_json();
  CHECK(j.at("gamma1").get<double>() == Catch::Approx(0.1));
  CHECK(j.at("config").at("seed").get<std::uint64_t>() == 12345);
  CHECK(j.at("results").size() == s.series.size());
}

TEST_CASE("config validation and json", "[montecarlo]") {
  auto c = small_config();
  CHECK_NOTHROW(c.validate());
  const auto back = MCConfig::from_json(c.to_json());
  CHECK(back.k_grid == c.k_grid);
  CHECK(back.estimators == c.estimators);
  CHECK(back.seed == c.seed);
  CHECK(back.model.target == c.model.target);

  auto bad = c;
  bad.replicates = 0;
  CHECK_THROWS(bad.validate());
  bad = c;
  bad.k_grid = {1};
  CHECK_THROWS(bad.validate());
  bad = c;
  bad.k_grid = {200};
  CHECK_THROWS(bad.validate());
  bad = c;
  bad.estimators.clear();
  CHECK_THROWS(bad.validate());

  const auto ranged = MCConfig::from_json(nlohmann::json::parse(R"({
    "model": {"target": {"frechet": [0.25]}, "censor": {"frechet": [0.5]}},
    "n": 300, "replicates": 5, "k_min": 10, "k_max": 30, "k_step": 10,
    "estimators": ["W", "BR:rho1=-2"]})"));
  CHECK(ranged.k_grid == std::vector<std::size_t>{10, 20, 30});
  CHECK(ranged.seed == kDefaultSeed);
  CHECK(ranged.estimators.size() == 2);
  CHECK_THROWS(MCConfig::from_json(nlohmann::json::parse(R"({"n": 300})")));
}

TEST_CASE("default k grid", "[montecarlo]") {
  const auto grid = default_k_grid(500);
  CHECK(grid.front() == 10);
  CHECK(grid.back() <= 475);
  CHECK(grid.back() > 470);
  for (std::size_t i = 1; i < grid.size(); ++i) CHECK(grid[i] - grid[i - 1] == 5);
}

TEST_CASE("spacing representation diagnostic", "[montecarlo]") {
  CHECK(std::isfinite(renyi_diagnostic(100, 2, 1)));
  CHECK(renyi_diagnostic(5000, 500, 3) < ks_critical_1pct(500));
  CHECK(renyi_diagnostic(1000, 100, 9) == renyi_diagnostic(1000, 100, 9));
}

TEST_CASE("clt and coverage helpers", "[montecarlo]") {
  const CensorModel pareto{HeavyTailDist::pareto(0.5), HeavyTailDist::pareto(1.5)};
  const auto r = clt_check(pareto, 2000, 50, 0.0, 60, 4, 1);
  CHECK(r.standardized.size() + r.failed_replicates == 60);
  CHECK(r.lambda == 0.0);
  CHECK(r.mean_shift == 0.0);
  CHECK(r.sigma == Catch::Approx(std::sqrt(0.375)).epsilon(1e-12));
  const auto again = clt_check(pareto, 2000, 50, 0.0, 60, 4, 2);
  CHECK(r.standardized == again.standardized);

  const auto cov = ci_coverage(pareto, 2000, 50, EstimatorSpec::gamma_w(), 0.95, 60, 4, 1);
  CHECK(cov.replicates == 60);
  CHECK(cov.intervals <= 60);
  CHECK(cov.coverage >= 0.0);
  CHECK(cov.coverage <= 1.0);

  const CensorModel heavy_censoring{HeavyTailDist::pareto(1.0), HeavyTailDist::pareto(0.5)};
  CHECK_THROWS(clt_check(heavy_censoring, 2000, 50, 0.0, 10, 1, 1));
}
