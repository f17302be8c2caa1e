#include "tailcens/distributions.hpp"

#include <cctype>
#include <cmath>
#include <string>

#include "tailcens/errors.hpp"
#include "tailcens/text_io.hpp"

namespace tailcens {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw DomainError(std::string(what) + " must be positive and finite, got " +
                      format_double(v));
}

HeavyTailDist build(const std::string& family, const std::vector<double>& args) {
  auto arity = [&](std::size_t lo, std::size_t hi) {
    if (args.size() < lo || args.size() > hi)
      throw DomainError(family + ": wrong number of parameters (" +
                        std::to_string(args.size()) + ")");
  };
  if (family == "burr") {
    arity(3, 3);
    return HeavyTailDist::burr(args[0], args[1], args[2]);
  }
  if (family == "frechet") {
    arity(1, 1);
    return HeavyTailDist::frechet(args[0]);
  }
  if (family == "pareto") {
    arity(1, 2);
    return HeavyTailDist::pareto(args[0], args.size() == 2 ? args[1] : 1.0);
  }
  throw DomainError("unknown distribution family '" + family + "'");
}

}  // namespace

HeavyTailDist HeavyTailDist::burr(double theta, double beta, double lambda) {
  require_positive(theta, "burr theta");
  require_positive(beta, "burr beta");
  require_positive(lambda, "burr lambda");
  return HeavyTailDist(Burr{theta, beta, lambda});
}

HeavyTailDist HeavyTailDist::frechet(double gamma) {
  require_positive(gamma, "frechet gamma");
  return HeavyTailDist(Frechet{gamma});
}

HeavyTailDist HeavyTailDist::pareto(double gamma, double scale) {
  require_positive(gamma, "pareto gamma");
  require_positive(scale, "pareto scale");
  return HeavyTailDist(Pareto{gamma, scale});
}

HeavyTailDist HeavyTailDist::parse(std::string_view text) {
  text = trim(text);
  const auto colon = text.find(':');
  if (colon == std::string_view::npos)
    throw DomainError("distribution spec needs 'family:params', got '" + std::string(text) + "'");
  std::string family(trim(text.substr(0, colon)));
  for (auto& ch : family) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  std::vector<double> args;
  auto rest = text.substr(colon + 1);
  while (true) {
    const auto comma = rest.find(',');
    try {
      args.push_back(parse_double(rest.substr(0, comma)));
    } catch (const std::invalid_argument& e) {
      throw DomainError(std::string(text) + ": " + e.what());
    }
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return build(family, args);
}

HeavyTailDist HeavyTailDist::from_json(const nlohmann::json& j) {
  if (j.is_string()) return parse(j.get<std::string>());
  if (!j.is_object() || j.size() != 1)
    throw DomainError(
        "distribution must be \"burr:10,2,5\" or a one-key object like {\"burr\":[10,2,5]}");
  const auto& [family, params] = *j.items().begin();
  if (!params.is_array()) throw DomainError(family + ": parameters must be an array");
  std::vector<double> args;
  for (const auto& v : params) {
    if (!v.is_number()) throw DomainError(family + ": parameters must be numbers");
    args.push_back(v.get<double>());
  }
  return build(family, args);
}

std::string HeavyTailDist::name() const {
  return std::visit(
      overloaded{
          [](const Burr& b) {
            return "burr:" + format_double(b.theta) + "," + format_double(b.beta) + "," +
                   format_double(b.lambda);
          },
          [](const Frechet& f) { return "frechet:" + format_double(f.gamma); },
          [](const Pareto& p) {
            return "pareto:" + format_double(p.gamma) + "," + format_double(p.scale);
          },
      },
      v_);
}

nlohmann::json HeavyTailDist::to_json() const {
  return std::visit(overloaded{
                        [](const Burr& b) {
                          return nlohmann::json{{"burr", {b.theta, b.beta, b.lambda}}};
                        },
                        [](const Frechet& f) { return nlohmann::json{{"frechet", {f.gamma}}}; },
                        [](const Pareto& p) {
                          return nlohmann::json{{"pareto", {p.gamma, p.scale}}};
                        },
                    },
                    v_);
}

bool operator==(const HeavyTailDist& a, const HeavyTailDist& b) { return a.name() == b.name(); }

double survival(const HeavyTailDist& d, double x) {
  return std::visit(overloaded{
                        [x](const Burr& b) {
                          if (x <= 0.0) return 1.0;
                          return std::exp(-b.lambda * std::log1p(std::pow(x, b.beta) / b.theta));
                        },
                        [x](const Frechet& f) {
                          if (x <= 0.0) return 1.0;
                          return -std::expm1(-std::pow(x, -1.0 / f.gamma));
                        },
                        [x](const Pareto& p) {
                          if (x <= p.scale) return 1.0;
                          return std::pow(x / p.scale, -1.0 / p.gamma);
                        },
                    },
                    d.variant());
}

double cdf(const HeavyTailDist& d, double x) {
  return std::visit(overloaded{
                        [x](const Burr& b) {
                          if (x <= 0.0) return 0.0;
                          return -std::expm1(-b.lambda * std::log1p(std::pow(x, b.beta) / b.theta));
                        },
                        [x](const Frechet& f) {
                          if (x <= 0.0) return 0.0;
                          return std::exp(-std::pow(x, -1.0 / f.gamma));
                        },
                        [x](const Pareto& p) {
                          if (x <= p.scale) return 0.0;
                          return -std::expm1(-std::log(x / p.scale) / p.gamma);
                        },
                    },
                    d.variant());
}

double quantile(const HeavyTailDist& d, double u) {
  if (!(u > 0.0 && u < 1.0))
    throw DomainError("quantile level must lie in (0,1), got " + format_double(u));
  return std::visit(overloaded{
                        [u](const Burr& b) {
                          const double excess = std::expm1(-std::log1p(-u) / b.lambda);
                          return std::pow(b.theta * excess, 1.0 / b.beta);
                        },
                        [u](const Frechet& f) { return std::pow(-std::log(u), -f.gamma); },
                        [u](const Pareto& p) {
                          return p.scale * std::exp(-p.gamma * std::log1p(-u));
                        },
                    },
                    d.variant());
}

double density(const HeavyTailDist& d, double x) {
  return std::visit(overloaded{
                        [x](const Burr& b) {
                          if (x <= 0.0) return 0.0;
                          const double xb = std::pow(x, b.beta);
                          return b.lambda * b.beta * (xb / x) / (b.theta + xb) *
                                 std::exp(-b.lambda * std::log1p(xb / b.theta));
                        },
                        [x](const Frechet& f) {
                          if (x <= 0.0) return 0.0;
                          const double t = std::pow(x, -1.0 / f.gamma);
                          return t / (f.gamma * x) * std::exp(-t);
                        },
                        [x](const Pareto& p) {
                          if (x < p.scale) return 0.0;
                          return std::pow(x / p.scale, -1.0 / p.gamma) / (p.gamma * x);
                        },
                    },
                    d.variant());
}

std::vector<double> sample(const HeavyTailDist& d, Stream& rng, std::size_t n) {
  std::vector<double> out(n);
  for (auto& v : out) v = quantile(d, rng.uniform());
  return out;
}

HallParams hall_params(const HeavyTailDist& d) {
  return std::visit(overloaded{
                        [](const Burr& b) {
                          return HallParams{1.0 / (b.lambda * b.beta),
                                            std::pow(b.theta, b.lambda),
                                            SecondOrder{-b.lambda * b.theta, b.beta}};
                        },
                        [](const Frechet& f) {
                          return HallParams{f.gamma, 1.0, SecondOrder{-0.5, 1.0 / f.gamma}};
                        },
                        [](const Pareto& p) {
                          return HallParams{p.gamma, std::pow(p.scale, 1.0 / p.gamma),
                                            std::nullopt};
                        },
                    },
                    d.variant());
}

}  // namespace tailcens
