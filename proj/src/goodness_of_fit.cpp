#include "tailcens/goodness_of_fit.hpp"

#include <algorithm>
#include <cmath>

namespace tailcens {

double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf) {
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    const double i_d = static_cast<double>(i);
    d = std::max({d, (i_d + 1.0) / n - f, f - i_d / n});
  }
  return d;
}

double ks_critical_1pct(std::size_t n) { return 1.63 / std::sqrt(static_cast<double>(n)); }

double standard_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

}  // namespace tailcens
