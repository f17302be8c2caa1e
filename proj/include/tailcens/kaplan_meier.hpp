#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tailcens/censoring.hpp"

namespace tailcens {

// Kaplan-Meier survival of X at the order statistics, right-continuous:
// value(i) = F̄ᴷᴹ(Z_{i,n}) for 1 <= i <= n.
class KMCurve {
 public:
  explicit KMCurve(std::vector<double> values) : values_(std::move(values)) {}

  std::size_t size() const { return values_.size(); }
  double value(std::size_t i) const { return values_[i - 1]; }
  std::span<const double> values() const { return values_; }

 private:
  std::vector<double> values_;
};

// Above this size the product is accumulated as a sum of logs.
inline constexpr std::size_t kKaplanMeierLogSpaceThreshold = 10000;

KMCurve km_survival(const CensoredSample& sample);

// How the tail weights avoid F̄ᴷᴹ at Z_{n,n}.
enum class KMWeighting {
  // F̄ᴷᴹ(Z_{n-j+1,n}) / F̄ᴷᴹ(Z_{n-k,n}), summed over 2 <= j <= k.
  kDropTop,
  // Left limit F̄ᴷᴹ(Z_{n-j,n}) / F̄ᴷᴹ(Z_{n-k,n}), summed over 1 <= j <= k.
  kLeftLimit,
};

// Tail weight of the j-th largest spacing for threshold Z_{n-k,n}.
// Requires 2 <= j <= k <= n-1 (1 <= j for kLeftLimit); throws IndexError.
double km_ratio(const KMCurve& curve, std::size_t j, std::size_t k,
                KMWeighting weighting = KMWeighting::kDropTop);

}  // namespace tailcens
