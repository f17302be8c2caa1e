#include "tailcens/kaplan_meier.hpp"

#include <cmath>
#include <string>

#include "tailcens/errors.hpp"

namespace tailcens {

KMCurve km_survival(const CensoredSample& sample) {
  const std::size_t n = sample.size();
  std::vector<double> values(n);
  if (n <= kKaplanMeierLogSpaceThreshold) {
    double s = 1.0;
    for (std::size_t i = 1; i <= n; ++i) {
      if (sample.uncensored(i))
        s *= static_cast<double>(n - i) / static_cast<double>(n - i + 1);
      values[i - 1] = s;
    }
  } else {
    double log_s = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
      if (sample.uncensored(i)) {
        if (i == n) {
          values[i - 1] = 0.0;
          continue;
        }
        log_s += std::log1p(-1.0 / static_cast<double>(n - i + 1));
      }
      values[i - 1] = std::exp(log_s);
    }
  }
  return KMCurve(std::move(values));
}

double km_ratio(const KMCurve& curve, std::size_t j, std::size_t k, KMWeighting weighting) {
  const std::size_t n = curve.size();
  const std::size_t j_min = weighting == KMWeighting::kDropTop ? 2 : 1;
  if (j < j_min || j > k || k + 1 > n)
    throw IndexError("km_ratio needs " + std::to_string(j_min) + " <= j <= k <= n-1 (j=" +
                     std::to_string(j) + ", k=" + std::to_string(k) +
                     ", n=" + std::to_string(n) + ")");
  const double denom = curve.value(n - k);
  const double num =
      weighting == KMWeighting::kDropTop ? curve.value(n - j + 1) : curve.value(n - j);
  return num / denom;
}

}  // namespace tailcens
