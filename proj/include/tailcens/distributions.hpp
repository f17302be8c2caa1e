#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "tailcens/rng.hpp"

namespace tailcens {

// Survival (θ/(θ + x^β))^λ, extreme value index 1/(λβ).
struct Burr {
  double theta;
  double beta;
  double lambda;
};

// Distribution function exp(-x^{-1/γ}).
struct Frechet {
  double gamma;
};

// Survival (x/scale)^{-1/γ} on [scale, ∞).
struct Pareto {
  double gamma;
  double scale;
};

class HeavyTailDist {
 public:
  using Variant = std::variant<Burr, Frechet, Pareto>;

  // Throws DomainError unless every parameter is strictly positive and finite.
  static HeavyTailDist burr(double theta, double beta, double lambda);
  static HeavyTailDist frechet(double gamma);
  static HeavyTailDist pareto(double gamma, double scale = 1.0);

  // "burr:10,2,5", "frechet:0.25", "pareto:0.5,1".
  static HeavyTailDist parse(std::string_view text);
  // {"burr":[10,2,5]}, {"frechet":[0.25]}, {"pareto":[0.5,1.0]}.
  static HeavyTailDist from_json(const nlohmann::json& j);

  const Variant& variant() const { return v_; }
  std::string name() const;  // same grammar as parse()
  nlohmann::json to_json() const;

  friend bool operator==(const HeavyTailDist& a, const HeavyTailDist& b);

 private:
  explicit HeavyTailDist(Variant v) : v_(v) {}
  Variant v_;
};

// Second-order part of a Hall-type tail, D·x^{-rate}.
struct SecondOrder {
  double D;
  double rate;
};

// F̄(x) = C x^{-1/γ} (1 + D x^{-rate} (1 + o(1))). An exact power law has no
// second-order term at all (rather than an infinite rate).
struct HallParams {
  double gamma;
  double C;
  std::optional<SecondOrder> second_order;

  bool exact_power_law() const { return !second_order.has_value(); }
  double D() const { return second_order ? second_order->D : 0.0; }
};

double survival(const HeavyTailDist& d, double x);
double cdf(const HeavyTailDist& d, double x);
// Inverse of cdf on (0,1); throws DomainError outside.
double quantile(const HeavyTailDist& d, double u);
double density(const HeavyTailDist& d, double x);

// Inverse-transform draws, one uniform per value.
std::vector<double> sample(const HeavyTailDist& d, Stream& rng, std::size_t n);

HallParams hall_params(const HeavyTailDist& d);

}  // namespace tailcens
