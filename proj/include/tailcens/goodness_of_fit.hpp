#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace tailcens {

// One-sample Kolmogorov-Smirnov statistic sup |F_n - F| against a continuous cdf.
double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf);

// Large-sample 1% critical value 1.63/√n.
double ks_critical_1pct(std::size_t n);

double standard_normal_cdf(double x);

}  // namespace tailcens
