#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tailcens/montecarlo.hpp"

namespace tailcens::cli {

enum class Format { kCsv, kJson };

Format parse_format(const std::string& s);

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kIoError = 1;
inline constexpr int kConfigError = 2;

struct EstimateOptions {
  std::string data_file;
  std::vector<std::string> estimators{"W"};
  std::optional<std::size_t> k_min;
  std::optional<std::size_t> k_max;
  std::size_t k_step = 1;
  double level = 0.95;
  bool left_limit = false;
  Format format = Format::kCsv;
  std::string out;  // empty: write to the output stream
};

struct SimulateOptions {
  std::string config_file;
  std::string model_x;
  std::string model_c;
  std::size_t n = 500;
  std::size_t reps = 2000;
  std::optional<std::size_t> k_min;
  std::optional<std::size_t> k_max;
  std::size_t k_step = 5;
  std::vector<std::string> estimators;  // empty: the study set
  std::uint64_t seed = kDefaultSeed;
  unsigned threads = 0;
  Format format = Format::kCsv;
  std::string out;
};

struct AsymOptions {
  std::string model_x;
  std::string model_c;
  double beta = 0.0;
  std::size_t k = 100;
  std::size_t n = 10000;
  Format format = Format::kCsv;
  std::string out;
};

struct FiguresOptions {
  std::string out_dir = "figures";
  std::size_t n = 500;
  std::size_t reps = 2000;
  std::uint64_t seed = kDefaultSeed;
  unsigned threads = 0;
};

struct CltOptions {
  std::string model_x;
  std::string model_c;
  std::size_t n = 10000;
  std::size_t k = 100;
  double beta = 0.0;
  std::size_t reps = 2000;
  std::uint64_t seed = kDefaultSeed;
  unsigned threads = 0;
  bool left_limit = false;
  std::string out;
};

// Each command writes its table to `out` (or to the file named in the
// options) and diagnostics/warnings to `log`, and returns an exit code.
int cmd_estimate(const EstimateOptions& opt, std::ostream& out, std::ostream& log);
int cmd_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& log);
int cmd_asym(const AsymOptions& opt, std::ostream& out, std::ostream& log);
int cmd_figures(const FiguresOptions& opt, std::ostream& log);
int cmd_clt(const CltOptions& opt, std::ostream& out, std::ostream& log);

struct Panel {
  std::string id;  // file stem, e.g. "burr-10-2-5_by_burr-10-4-1"
  std::string title;
  CensorModel model;
};

// The six censoring designs of the finite-sample study.
std::vector<Panel> study_panels();

// Columns of every panel CSV, in order.
std::vector<std::string> panel_csv_columns();

// Gnuplot script drawing median bias and MSE against k for every panel.
std::string plot_script(const std::vector<Panel>& panels);

}  // namespace tailcens::cli
