#include "tailcens/errors.hpp"

#include "tailcens/text_io.hpp"

namespace tailcens {

SingularEstimate::SingularEstimate(double t_stat, double beta)
    : std::runtime_error("singular estimate: 1 - beta*T = " +
                         format_double(1.0 - beta * t_stat) + " (T=" + format_double(t_stat) +
                         ", beta=" + format_double(beta) + ")"),
      t_stat_(t_stat),
      beta_(beta) {}

AllCensored::AllCensored(std::size_t k)
    : std::runtime_error("all top-" + std::to_string(k) + " observations are censored") {}

UndefinedReparametrization::UndefinedReparametrization(double gamma_w)
    : std::runtime_error("bias reduction undefined for gamma_w = " + format_double(gamma_w) +
                         " <= 0"),
      gamma_w_(gamma_w) {}

TheoremConditionViolated::TheoremConditionViolated(double p_beta)
    : std::runtime_error("p_beta = " + format_double(p_beta) +
                         " <= 1/2: asymptotic normality not available"),
      p_beta_(p_beta) {}

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
      line_(line) {}

}  // namespace tailcens
