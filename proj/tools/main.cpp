#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"

namespace cli = tailcens::cli;

int main(int argc, char** argv) {
  CLI::App app{"Extreme value index estimation under random right-censoring"};
  app.require_subcommand(1);

  std::string format = "csv";
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  };

  cli::EstimateOptions est;
  auto* estimate = app.add_subcommand("estimate", "Estimate the tail index from a z,delta CSV");
  estimate->add_option("--data", est.data_file, "Input CSV with header z,delta")->required();
  estimate->add_option("--est", est.estimators, "Estimator: W, H, T:beta=<f>, G:beta=<f>, BR:rho1=<f>");
  estimate->add_option("--k-min", est.k_min);
  estimate->add_option("--k-max", est.k_max);
  estimate->add_option("--k-step", est.k_step);
  estimate->add_option("--level", est.level, "Confidence level")->check(CLI::Range(0.0, 0.999999));
  estimate->add_flag("--left-limit", est.left_limit, "Left-limit Kaplan-Meier weights");
  estimate->add_option("--out", est.out, "Output file (default stdout)");
  add_format(estimate);

  cli::SimulateOptions sim;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo median bias and MSE against k");
  simulate->add_option("--config", sim.config_file, "JSON experiment config");
  simulate->add_option("--model-x", sim.model_x, "Target law, e.g. burr:10,2,5");
  simulate->add_option("--model-c", sim.model_c, "Censoring law, e.g. burr:10,4,1");
  simulate->add_option("--n", sim.n);
  simulate->add_option("--reps", sim.reps);
  simulate->add_option("--k-min", sim.k_min);
  simulate->add_option("--k-max", sim.k_max);
  simulate->add_option("--k-step", sim.k_step);
  simulate->add_option("--est", sim.estimators);
  simulate->add_option("--seed", sim.seed);
  simulate->add_option("--threads", sim.threads, "Worker threads (0 = all cores)");
  simulate->add_option("--out", sim.out);
  add_format(simulate);

  cli::AsymOptions asym;
  auto* asym_cmd = app.add_subcommand("asym", "Asymptotic variances, biases and lambda");
  asym_cmd->add_option("--model-x", asym.model_x)->required();
  asym_cmd->add_option("--model-c", asym.model_c)->required();
  asym_cmd->add_option("--beta", asym.beta);
  asym_cmd->add_option("--k", asym.k);
  asym_cmd->add_option("--n", asym.n);
  asym_cmd->add_option("--out", asym.out);
  add_format(asym_cmd);

  cli::FiguresOptions fig;
  auto* figures = app.add_subcommand("figures", "Run the six study panels and write CSV + gnuplot");
  figures->add_option("--out", fig.out_dir, "Output directory");
  figures->add_option("--n", fig.n);
  figures->add_option("--reps", fig.reps);
  figures->add_option("--seed", fig.seed);
  figures->add_option("--threads", fig.threads);

  cli::CltOptions clt;
  auto* clt_cmd = app.add_subcommand("clt", "Standardized T statistic sample and its KS distance to N(0,1)");
  clt_cmd->add_option("--model-x", clt.model_x)->required();
  clt_cmd->add_option("--model-c", clt.model_c)->required();
  clt_cmd->add_option("--n", clt.n);
  clt_cmd->add_option("--k", clt.k);
  clt_cmd->add_option("--beta", clt.beta);
  clt_cmd->add_option("--reps", clt.reps);
  clt_cmd->add_option("--seed", clt.seed);
  clt_cmd->add_option("--threads", clt.threads);
  clt_cmd->add_flag("--left-limit", clt.left_limit, "Left-limit Kaplan-Meier weights");
  clt_cmd->add_option("--out", clt.out);

  CLI11_PARSE(app, argc, argv);

  const auto fmt = cli::parse_format(format);
  if (estimate->parsed()) {
    est.format = fmt;
    return cli::cmd_estimate(est, std::cout, std::cerr);
  }
  if (simulate->parsed()) {
    sim.format = fmt;
    return cli::cmd_simulate(sim, std::cout, std::cerr);
  }
  if (asym_cmd->parsed()) {
    asym.format = fmt;
    return cli::cmd_asym(asym, std::cout, std::cerr);
  }
  if (figures->parsed()) return cli::cmd_figures(fig, std::cerr);
  if (clt_cmd->parsed()) return cli::cmd_clt(clt, std::cout, std::cerr);
  return cli::kConfigError;
}
