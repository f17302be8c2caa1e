#include "commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <variant>

#include "tailcens/asymptotics.hpp"
#include "tailcens/errors.hpp"
#include "tailcens/estimators.hpp"
#include "tailcens/goodness_of_fit.hpp"
#include "tailcens/text_io.hpp"

namespace tailcens::cli {
namespace {

// Runs write(stream) against `path` when non-empty, else against `fallback`.
bool emit(const std::string& path, std::ostream& fallback, std::ostream& log,
          const std::function<void(std::ostream&)>& write) {
  if (path.empty()) {
    write(fallback);
    return true;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    log << "error: cannot open '" << path << "' for writing\n";
    return false;
  }
  write(file);
  file.flush();
  if (!file) {
    log << "error: write to '" << path << "' failed\n";
    return false;
  }
  return true;
}

std::string opt_field(const std::optional<double>& v) { return v ? format_double(*v) : ""; }

nlohmann::json opt_json(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

std::vector<EstimatorSpec> parse_specs(const std::vector<std::string>& texts) {
  std::vector<EstimatorSpec> specs;
  for (const auto& t : texts) specs.push_back(EstimatorSpec::parse(t));
  return specs;
}

CensorModel parse_model(const std::string& x, const std::string& c) {
  if (x.empty() || c.empty()) throw DomainError("both --model-x and --model-c are required");
  return {HeavyTailDist::parse(x), HeavyTailDist::parse(c)};
}

void report_regime(const MCConfig& config, std::ostream& log) {
  const double g1 = hall_params(config.model.target).gamma;
  const double g2 = hall_params(config.model.censor).gamma;
  const double p = theoretical_p(g1, g2);
  log << "gamma1 = " << format_double(g1) << ", gamma2 = " << format_double(g2)
      << ", p = " << format_double(p) << '\n';
  for (const auto& e : config.estimators) {
    std::optional<double> pb;
    if (auto beta = e.beta())
      pb = p * (1.0 + g1 * *beta);
    else if (e.kind == EstimatorSpec::Kind::kBiasReduced)
      pb = p;
    if (!pb) continue;
    log << e.name() << ": p_beta = " << format_double(*pb) << '\n';
    if (*pb <= 0.5)
      log << "warning: " << e.name() << " runs with p_beta = " << format_double(*pb)
          << " <= 1/2, outside the asymptotic normality regime\n";
  }
}

}  // namespace

Format parse_format(const std::string& s) {
  if (s == "csv") return Format::kCsv;
  if (s == "json") return Format::kJson;
  throw DomainError("format must be csv or json, got '" + s + "'");
}

int cmd_estimate(const EstimateOptions& opt, std::ostream& out, std::ostream& log) {
  std::vector<EstimatorSpec> specs;
  try {
    specs = parse_specs(opt.estimators);
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return kConfigError;
  }
  std::ifstream in(opt.data_file);
  if (!in) {
    log << "error: cannot open '" << opt.data_file << "'\n";
    return kIoError;
  }
  std::optional<TailEstimator> est;
  try {
    est.emplace(read_censored_csv(in),
                opt.left_limit ? KMWeighting::kLeftLimit : KMWeighting::kDropTop);
  } catch (const ParseError& e) {
    log << "error: " << opt.data_file << ": " << e.what() << '\n';
    return kIoError;
  } catch (const std::exception& e) {
    log << "error: " << opt.data_file << ": " << e.what() << '\n';
    return kIoError;
  }
  const std::size_t n = est->size();
  const std::size_t k_min = opt.k_min.value_or(2);
  const std::size_t k_max = opt.k_max.value_or(n - 1);
  if (k_min < 1 || k_min > k_max || k_max + 1 > n || opt.k_step == 0) {
    log << "error: k range [" << k_min << ", " << k_max << "] step " << opt.k_step
        << " invalid for n = " << n << '\n';
    return kConfigError;
  }

  struct Row {
    std::string estimator;
    EstimateResult result;
  };
  std::vector<Row> rows;
  for (const auto& spec : specs) {
    for (std::size_t k = k_min; k <= k_max; k += opt.k_step) {
      try {
        rows.push_back({spec.name(), est->evaluate(spec, k, opt.level)});
      } catch (const std::exception& e) {
        EstimateResult r;
        r.k = k;
        r.value = std::nan("");
        r.error = e.what();
        rows.push_back({spec.name(), r});
      }
    }
  }

  const bool ok = emit(opt.out, out, log, [&](std::ostream& os) {
    if (opt.format == Format::kCsv) {
      os << "estimator,k,value,std_error,ci_low,ci_high,p_hat,flags,error\n";
      for (const auto& [name, r] : rows) {
        std::string error = r.error.value_or("");
        for (auto& ch : error)
          if (ch == ',' || ch == '\n') ch = ';';
        os << name << ',' << r.k << ',' << format_double(r.value) << ','
           << opt_field(r.std_error) << ',' << opt_field(r.ci_low) << ','
           << opt_field(r.ci_high) << ',' << format_double(r.p_hat) << ','
           << r.flags.to_string() << ',' << error << '\n';
      }
    } else {
      nlohmann::json results = nlohmann::json::array();
      for (const auto& [name, r] : rows)
        results.push_back({{"estimator", name},
                           {"k", r.k},
                           {"value", r.ok() ? nlohmann::json(r.value) : nlohmann::json(nullptr)},
                           {"std_error", opt_json(r.std_error)},
                           {"ci_low", opt_json(r.ci_low)},
                           {"ci_high", opt_json(r.ci_high)},
                           {"p_hat", r.p_hat},
                           {"flags", r.flags.to_string()},
                           {"error", r.error ? nlohmann::json(*r.error) : nlohmann::json(nullptr)}});
      os << nlohmann::json{{"n", n}, {"level", opt.level}, {"results", results}}.dump(2) << '\n';
    }
  });
  return ok ? kOk : kIoError;
}

int cmd_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& log) {
  std::optional<MCConfig> parsed;
  try {
    if (!opt.config_file.empty()) {
      if (!opt.model_x.empty() || !opt.model_c.empty())
        throw DomainError("--config conflicts with --model-x/--model-c");
      std::ifstream in(opt.config_file);
      if (!in) {
        log << "error: cannot open '" << opt.config_file << "'\n";
        return kIoError;
      }
      nlohmann::json j;
      try {
        in >> j;
      } catch (const nlohmann::json::exception& e) {
        log << "error: " << opt.config_file << ": " << e.what() << '\n';
        return kIoError;
      }
      parsed = MCConfig::from_json(j);
    } else {
      std::vector<std::size_t> grid;
      if (opt.k_min || opt.k_max) {
        if (opt.k_step == 0) throw DomainError("--k-step must be >= 1");
        const std::size_t hi = opt.k_max.value_or(opt.n - 1);
        for (std::size_t k = opt.k_min.value_or(2); k <= hi; k += opt.k_step) grid.push_back(k);
      } else {
        grid = default_k_grid(opt.n);
      }
      parsed = MCConfig{parse_model(opt.model_x, opt.model_c),
                        opt.n,
                        opt.reps,
                        std::move(grid),
                        opt.estimators.empty() ? study_estimators() : parse_specs(opt.estimators),
                        opt.seed};
    }
    parsed->validate();
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return kConfigError;
  }

  report_regime(*parsed, log);
  const auto summary = run_experiment(*parsed, opt.threads);
  const bool ok = emit(opt.out, out, log, [&](std::ostream& os) {
    if (opt.format == Format::kCsv)
      summary.write_csv(os);
    else
      os << summary.to_json().dump(2) << '\n';
  });
  return ok ? kOk : kIoError;
}

int cmd_asym(const AsymOptions& opt, std::ostream& out, std::ostream& log) {
  AsymptoticParams a;
  try {
    if (opt.k < 1 || opt.k > opt.n) throw DomainError("need 1 <= k <= n");
    a = AsymptoticParams::from_model(parse_model(opt.model_x, opt.model_c), opt.beta, opt.k, opt.n);
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return kConfigError;
  }
  using Cell = std::variant<double, std::string>;
  auto guarded = [](const std::function<double()>& f) -> Cell {
    try {
      return f();
    } catch (const TheoremConditionViolated&) {
      return std::string("condition_violated");
    } catch (const DomainError&) {
      return std::string("condition_violated");
    }
  };
  std::vector<std::pair<std::string, Cell>> rows{
      {"gamma1", a.gamma1},
      {"gamma2", a.gamma2},
      {"gamma", a.gamma},
      {"p", a.p},
      {"p_beta", a.p_beta()},
      {"sigma2_T", guarded([&] { return sigma2_t(a.gamma, a.p, a.beta); })},
      {"sigma2_gamma", guarded([&] { return sigma2_gamma(a.gamma1, a.p, a.beta); })},
      {"sigma2_BR", a.hall_f.second_order
                        ? guarded([&] {
                            return sigma2_br(a.gamma1, a.p, a.gamma * a.hall_f.second_order->rate);
                          })
                        : Cell(std::string("not_applicable"))},
      {"sigma2_hill", guarded([&] { return sigma2_hill(a.gamma1, a.p); })},
      {"m_T", guarded([&] { return m_t(a); })},
      {"m_gamma", guarded([&] { return m_gamma(a); })},
      {"lambda", a.lambda},
  };
  if (!(a.p_beta() > 0.5))
    log << "warning: p_beta = " << format_double(a.p_beta())
        << " <= 1/2, limit law not available\n";
  const bool ok = emit(opt.out, out, log, [&](std::ostream& os) {
    if (opt.format == Format::kCsv) {
      os << "quantity,value\n";
      for (const auto& [name, cell] : rows) {
        os << name << ',';
        if (auto d = std::get_if<double>(&cell))
          os << format_double(*d);
        else
          os << std::get<std::string>(cell);
        os << '\n';
      }
    } else {
      nlohmann::json j = nlohmann::json::object();
      for (const auto& [name, cell] : rows) {
        if (auto d = std::get_if<double>(&cell))
          j[name] = *d;
        else
          j[name] = std::get<std::string>(cell);
      }
      j["beta"] = opt.beta;
      j["k"] = opt.k;
      j["n"] = opt.n;
      os << j.dump(2) << '\n';
    }
  });
  return ok ? kOk : kIoError;
}

std::vector<Panel> study_panels() {
  using D = HeavyTailDist;
  auto panel = [](std::string id, std::string title, D x, D c) {
    return Panel{std::move(id), std::move(title), {std::move(x), std::move(c)}};
  };
  return {
      panel("burr-10-2-5_by_burr-10-4-1", "Burr(10,2,5) censored by Burr(10,4,1)",
            D::burr(10, 2, 5), D::burr(10, 4, 1)),
      panel("burr-10-2-2_by_burr-10-5-2", "Burr(10,2,2) censored by Burr(10,5,2)",
            D::burr(10, 2, 2), D::burr(10, 5, 2)),
      panel("burr-10-5-2_by_burr-10-2-2", "Burr(10,5,2) censored by Burr(10,2,2)",
            D::burr(10, 5, 2), D::burr(10, 2, 2)),
      panel("burr-10-4-1_by_burr-10-2-5", "Burr(10,4,1) censored by Burr(10,2,5)",
            D::burr(10, 4, 1), D::burr(10, 2, 5)),
      panel("frechet-0.25_by_frechet-0.5", "Frechet(1/4) censored by Frechet(1/2)",
            D::frechet(0.25), D::frechet(0.5)),
      panel("frechet-0.5_by_frechet-0.25", "Frechet(1/2) censored by Frechet(1/4)",
            D::frechet(0.5), D::frechet(0.25)),
  };
}

std::vector<std::string> panel_csv_columns() {
  return {"estimator", "k", "median_bias", "mse", "valid_count", "gamma1", "p"};
}

std::string plot_script(const std::vector<Panel>& panels) {
  const auto estimators = study_estimators();
  std::ostringstream gp;
  gp << "# gnuplot -c figures.gp  (run inside the output directory)\n"
     << "set datafile separator ','\n"
     << "set terminal pdfcairo size 16cm,8cm font ',8'\n"
     << "set output 'figures.pdf'\n"
     << "set xlabel 'k'\n"
     << "set key outside right\n";
  for (const auto& panel : panels) {
    gp << "\nset multiplot layout 1,2 title '" << panel.title << "'\n";
    const char* measures[2][2] = {{"3", "median bias"}, {"4", "MSE"}};
    for (const auto& m : measures) {
      gp << "set ylabel '" << m[1] << "'\n"
         << "plot \\\n";
      for (std::size_t e = 0; e < estimators.size(); ++e) {
        const auto name = estimators[e].name();
        gp << "  '" << panel.id << ".csv' using 2:(strcol(1) eq '" << name << "' ? $" << m[0]
           << " : NaN) with lines title '" << name << "'"
           << (e + 1 < estimators.size() ? ", \\\n" : "\n");
      }
    }
    gp << "unset multiplot\n";
  }
  return gp.str();
}

int cmd_figures(const FiguresOptions& opt, std::ostream& log) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(opt.out_dir, ec);
  if (ec || !fs::is_directory(opt.out_dir)) {
    log << "error: cannot create output directory '" << opt.out_dir << "'\n";
    return kIoError;
  }
  const auto panels = study_panels();
  for (const auto& panel : panels) {
    MCConfig config{panel.model, opt.n, opt.reps, default_k_grid(opt.n), study_estimators(),
                    opt.seed};
    try {
      config.validate();
    } catch (const std::exception& e) {
      log << "error: " << e.what() << '\n';
      return kConfigError;
    }
    log << panel.id << ": " << panel.title << '\n';
    report_regime(config, log);
    const auto summary = run_experiment(config, opt.threads);
    const auto stem = (fs::path(opt.out_dir) / panel.id).string();
    std::ostringstream sink;
    bool ok = emit(stem + ".csv", sink, log, [&](std::ostream& os) {
      const auto cols = panel_csv_columns();
      for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
      os << '\n';
      const auto g1 = format_double(summary.gamma1);
      const auto p = format_double(summary.p);
      for (const auto& s : summary.series)
        for (const auto& c : s.cells)
          os << s.estimator.name() << ',' << c.k << ',' << format_double(c.median_bias) << ','
             << format_double(c.mse) << ',' << c.valid_count << ',' << g1 << ',' << p << '\n';
    });
    ok = ok && emit(stem + ".json", sink, log, [&](std::ostream& os) {
      auto j = summary.to_json();
      j["panel"] = panel.id;
      j["title"] = panel.title;
      os << j.dump(2) << '\n';
    });
    if (!ok) return kIoError;
  }
  std::ostringstream sink;
  const bool ok = emit((fs::path(opt.out_dir) / "figures.gp").string(), sink, log,
                       [&](std::ostream& os) { os << plot_script(panels); });
  return ok ? kOk : kIoError;
}

int cmd_clt(const CltOptions& opt, std::ostream& out, std::ostream& log) {
  CltResult res;
  try {
    res = clt_check(parse_model(opt.model_x, opt.model_c), opt.n, opt.k, opt.beta, opt.reps,
                    opt.seed, opt.threads,
                    opt.left_limit ? KMWeighting::kLeftLimit : KMWeighting::kDropTop);
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return kConfigError;
  }
  log << "lambda = " << format_double(res.lambda) << ", shift = " << format_double(res.mean_shift)
      << ", sigma = " << format_double(res.sigma) << '\n'
      << "ks = " << format_double(res.ks_statistic)
      << " (1% critical " << format_double(ks_critical_1pct(res.standardized.size())) << ")\n";
  const bool ok = emit(opt.out, out, log, [&](std::ostream& os) {
    os << "standardized\n";
    for (double v : res.standardized) os << format_double(v) << '\n';
  });
  return ok ? kOk : kIoError;
}

}  // namespace tailcens::cli
