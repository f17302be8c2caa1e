#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tailcens {

// Argument outside the mathematical domain of a function (u not in (0,1),
// non-positive shape parameter, a == 1 in the spacing bounds, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Order-statistic index outside the admissible range.
class IndexError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// 1 - beta * T is numerically zero, so gamma_beta would blow up.
class SingularEstimate : public std::runtime_error {
 public:
  SingularEstimate(double t_stat, double beta);
  double t_stat() const { return t_stat_; }
  double beta() const { return beta_; }

 private:
  double t_stat_;
  double beta_;
};

// Every one of the top-k observations is censored (p_hat == 0).
class AllCensored : public std::runtime_error {
 public:
  explicit AllCensored(std::size_t k);
};

// Bias-reduced estimator needs gamma_w > 0 to set beta = -rho1 / gamma_w.
class UndefinedReparametrization : public std::runtime_error {
 public:
  explicit UndefinedReparametrization(double gamma_w);
  double gamma_w() const { return gamma_w_; }

 private:
  double gamma_w_;
};

// p_beta <= 1/2: the CLT is not available, no variance is reported.
class TheoremConditionViolated : public std::runtime_error {
 public:
  explicit TheoremConditionViolated(double p_beta);
  double p_beta() const { return p_beta_; }

 private:
  double p_beta_;
};

// Malformed input file; line is 1-based, 0 when not line specific.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace tailcens
