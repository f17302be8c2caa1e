#include "tailcens/censoring.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

#include "tailcens/errors.hpp"
#include "tailcens/text_io.hpp"

namespace tailcens {

CensoredSample CensoredSample::from_observations(std::vector<double> z,
                                                 std::vector<std::uint8_t> delta) {
  if (z.size() != delta.size())
    throw std::invalid_argument("z and delta lengths differ");
  if (z.size() < 3) throw std::invalid_argument("a censored sample needs at least 3 observations");
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (!(z[i] > 0.0) || !std::isfinite(z[i]))
      throw std::invalid_argument("observation " + std::to_string(i + 1) +
                                  " is not a positive finite number");
    if (delta[i] > 1) throw std::invalid_argument("delta must be 0 or 1");
  }
  std::vector<std::size_t> order(z.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (z[a] != z[b]) return z[a] < z[b];
    return delta[a] > delta[b];
  });
  std::vector<double> zs(z.size());
  std::vector<std::uint8_t> ds(z.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    zs[i] = z[order[i]];
    ds[i] = delta[order[i]];
  }
  return CensoredSample(std::move(zs), std::move(ds));
}

CensoredSample CensoredSample::scaled(double c) const {
  if (!(c > 0.0)) throw DomainError("scale factor must be positive");
  auto z = z_;
  for (auto& v : z) v *= c;
  return CensoredSample(std::move(z), delta_);
}

CensoredSample censor_pairs(std::span<const double> x, std::span<const double> c) {
  if (x.size() != c.size()) throw std::invalid_argument("x and c lengths differ");
  std::vector<double> z(x.size());
  std::vector<std::uint8_t> delta(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    z[i] = std::min(x[i], c[i]);
    delta[i] = x[i] <= c[i] ? 1 : 0;
  }
  return CensoredSample::from_observations(std::move(z), std::move(delta));
}

CensoredSample draw_sample(const CensorModel& model, Stream& rng, std::size_t n) {
  const auto x = sample(model.target, rng, n);
  const auto c = sample(model.censor, rng, n);
  return censor_pairs(x, c);
}

double theoretical_p(double gamma1, double gamma2) {
  if (!(gamma1 > 0.0) || !(gamma2 > 0.0))
    throw DomainError("extreme value indices must be positive");
  return gamma2 / (gamma1 + gamma2);
}

double p_beta(double p, double gamma, double beta) { return p + gamma * beta; }

HallParams combined_hall(const HallParams& f, const HallParams& g) {
  HallParams z{1.0 / (1.0 / f.gamma + 1.0 / g.gamma), f.C * g.C, std::nullopt};
  if (f.second_order && g.second_order) {
    const auto& a = *f.second_order;
    const auto& b = *g.second_order;
    if (a.rate < b.rate)
      z.second_order = a;
    else if (b.rate < a.rate)
      z.second_order = b;
    else
      z.second_order = SecondOrder{a.D + b.D, a.rate};
  } else if (f.second_order) {
    z.second_order = f.second_order;
  } else if (g.second_order) {
    z.second_order = g.second_order;
  }
  return z;
}

double p_of_z(const CensorModel& model, double z) {
  if (!(z > 0.0)) throw DomainError("p_of_z needs z > 0");
  const double event = density(model.target, z) * survival(model.censor, z);
  const double censoring = density(model.censor, z) * survival(model.target, z);
  if (event + censoring <= 0.0)
    throw DomainError("p_of_z undefined at z = " + format_double(z) + " (zero hazard)");
  return event / (event + censoring);
}

CensoredSample read_censored_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::vector<double> z;
  std::vector<std::uint8_t> delta;
  while (std::getline(in, line)) {
    ++line_no;
    const auto row = trim(line);
    if (row.empty()) continue;
    if (!have_header) {
      std::string header(row);
      header.erase(std::remove(header.begin(), header.end(), ' '), header.end());
      if (header != "z,delta") throw ParseError(line_no, "expected header 'z,delta'");
      have_header = true;
      continue;
    }
    const auto comma = row.find(',');
    if (comma == std::string_view::npos || row.find(',', comma + 1) != std::string_view::npos)
      throw ParseError(line_no, "expected two fields 'z,delta'");
    double zv = 0.0;
    try {
      zv = parse_double(row.substr(0, comma));
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_no, e.what());
    }
    if (!(zv > 0.0) || !std::isfinite(zv))
      throw ParseError(line_no, "z must be a positive finite number");
    const auto d = trim(row.substr(comma + 1));
    if (d != "0" && d != "1") throw ParseError(line_no, "delta must be 0 or 1");
    z.push_back(zv);
    delta.push_back(d == "1" ? 1 : 0);
  }
  if (!have_header) throw ParseError(0, "empty input: missing 'z,delta' header");
  if (z.size() < 3) throw ParseError(line_no, "need at least 3 observations, got " +
                                                  std::to_string(z.size()));
  return CensoredSample::from_observations(std::move(z), std::move(delta));
}

void write_censored_csv(std::ostream& out, const CensoredSample& sample) {
  out << "z,delta\n";
  for (std::size_t i = 0; i < sample.size(); ++i)
    out << format_double(sample.z()[i]) << ',' << int(sample.delta()[i]) << '\n';
}

}  // namespace tailcens
