// specrisk command-line toolkit. All functionality lives behind the C API in
// specrisk.h; this file only maps flags onto sr_run_options.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "specrisk.h"

namespace {

struct CliState {
  std::string input;
  std::string layout = "long";
  std::string sentinel;
  std::string out_dir;
  std::uint64_t seed = 0;
  int bins = 50;
  std::string bounds = "0,1";
  bool no_short = false;
  bool clean = false;
  bool regress = false;
  int grid = 100;
  int window = 100;
  int step = 5;
  int sims = 10000;
  std::string prev_range;
  std::string target_range;
  std::string index_path;
  std::vector<std::string> methods;
};

bool parse_bounds(const std::string& text, double* lo, double* hi) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) return false;
  try {
    *lo = std::stod(text.substr(0, comma));
    const std::string upper = text.substr(comma + 1);
    *hi = (upper == "inf" || upper == "+inf") ? HUGE_VAL : std::stod(upper);
  } catch (...) {
    return false;
  }
  return *lo <= *hi;
}

unsigned method_mask(const std::vector<std::string>& methods, bool clean, bool regress) {
  if (methods.empty()) {
    // --clean/--regress narrow the matrix to one configuration; with neither
    // flag all four run.
    if (clean || regress) return 1u << ((clean ? 1u : 0u) | (regress ? 2u : 0u));
    return 0;  // all
  }
  unsigned mask = 0;
  for (const auto& m : methods) {
    if (m == "raw") {
      mask |= 1u << 0;
    } else if (m == "clean") {
      mask |= 1u << 1;
    } else if (m == "regress") {
      mask |= 1u << 2;
    } else if (m == "clean_regress") {
      mask |= 1u << 3;
    }
  }
  return mask;
}

std::string join_args(int argc, char** argv) {
  std::string echo;
  for (int i = 0; i < argc; ++i) {
    if (i > 0) echo += ' ';
    echo += argv[i];
  }
  return echo;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"specrisk: correlation-matrix denoising and portfolio risk forecasting"};
  app.set_version_flag("--version", std::string(sr_version()));
  app.set_config("--config", "", "key=value file mirroring the flags (flags win)");
  app.fallthrough();
  app.require_subcommand(1);

  CliState state;
  app.add_option("--input", state.input, "price file (dates ISO-8601, UTF-8)");
  app.add_option("--layout", state.layout, "price file layout: long | wide")
      ->check(CLI::IsMember({"long", "wide"}))
      ->capture_default_str();
  app.add_option("--sentinel", state.sentinel,
                 "cell text treated as a missing mark (besides the empty cell)");
  app.add_option("--out", state.out_dir, "output directory for run artifacts");
  app.add_option("--seed", state.seed, "root seed for all randomized steps")
      ->capture_default_str();
  app.add_option("--bins", state.bins, "histogram bins for the KL distance")
      ->capture_default_str();
  app.add_option("--bounds", state.bounds, "uniform weight bounds LO,HI (HI may be inf)")
      ->capture_default_str();
  app.add_flag("--no-short", state.no_short, "no short selling: bounds 0 <= w <= 1");
  app.add_flag("--clean", state.clean, "clean the correlation matrix (noise-band average)");
  app.add_flag("--regress", state.regress, "remove the market mode by single-index regression");
  app.add_option("--grid", state.grid, "frontier grid points")->capture_default_str();
  app.add_option("--window", state.window, "rolling window length in trading days")
      ->capture_default_str();
  app.add_option("--step", state.step, "rolling window lag in trading days")
      ->capture_default_str();
  app.add_option("--sims", state.sims, "shuffle simulations for the noise baseline")
      ->capture_default_str();
  app.add_option("--prev", state.prev_range, "previous-year range YYYY-MM-DD:YYYY-MM-DD");
  app.add_option("--target", state.target_range, "target-year range YYYY-MM-DD:YYYY-MM-DD");
  app.add_option("--index", state.index_path, "external market index CSV (date,return)");
  app.add_option("--method", state.methods,
                 "pair/rolling method subset (repeatable): raw | clean | regress | "
                 "clean_regress")
      ->check(CLI::IsMember({"raw", "clean", "regress", "clean_regress"}));

  auto* ingest = app.add_subcommand("ingest", "parse and validate a price file");
  auto* spectrum =
      app.add_subcommand("spectrum", "eigenvalues, noise band, MP overlay, qq points, KS");
  auto* clean_cmd = app.add_subcommand("clean", "emit the noise-cleaned correlation matrix");
  auto* residuals = app.add_subcommand("residuals", "single-index regression residuals");
  auto* frontier = app.add_subcommand("frontier", "one minimum-risk frontier");
  auto* pair = app.add_subcommand("pair", "previous/target year-pair comparison");
  auto* rolling = app.add_subcommand("rolling", "sliding-window temporal analysis");
  auto* simulate = app.add_subcommand("simulate", "column-shuffle noise baseline");
  for (auto* sub : {ingest, spectrum, clean_cmd, residuals, frontier, pair, rolling, simulate}) {
    sub->fallthrough();
  }

  CLI11_PARSE(app, argc, argv);

  sr_run_options options = sr_run_options_default();
  const std::string echo = join_args(argc, argv);
  options.input = state.input.empty() ? nullptr : state.input.c_str();
  options.layout = state.layout.c_str();
  options.missing_sentinel = state.sentinel.c_str();
  options.out_dir = state.out_dir.empty() ? nullptr : state.out_dir.c_str();
  options.command_echo = echo.c_str();
  options.method.cleaning = state.clean ? 1 : 0;
  options.method.regression = state.regress ? 1 : 0;
  options.method.grid_points = state.grid;
  options.method.bin_count = state.bins;
  options.method.seed = state.seed;
  options.method_mask = method_mask(state.methods, state.clean, state.regress);
  options.window_length = state.window;
  options.step = state.step;
  options.n_sims = state.sims;
  options.previous_range = state.prev_range.empty() ? nullptr : state.prev_range.c_str();
  options.target_range = state.target_range.empty() ? nullptr : state.target_range.c_str();
  options.index_path = state.index_path.empty() ? nullptr : state.index_path.c_str();

  double lo = 0.0;
  double hi = 1.0;
  if (!parse_bounds(state.bounds, &lo, &hi)) {
    std::fprintf(stderr, "error: --bounds must be 'LO,HI' with LO <= HI\n");
    return 2;
  }
  if (state.no_short) {
    lo = 0.0;
    hi = 1.0;
  }
  options.method.lower_bound = lo;
  options.method.upper_bound = hi;

  sr_status status = SR_OK;
  char* summary = nullptr;
  if (ingest->parsed()) {
    status = sr_cmd_ingest(&options, &summary);
  } else if (spectrum->parsed()) {
    status = sr_cmd_spectrum(&options, &summary);
  } else if (clean_cmd->parsed()) {
    status = sr_cmd_clean(&options, &summary);
  } else if (residuals->parsed()) {
    status = sr_cmd_residuals(&options, &summary);
  } else if (frontier->parsed()) {
    status = sr_cmd_frontier(&options, &summary);
  } else if (pair->parsed()) {
    status = sr_cmd_pair(&options, &summary);
  } else if (rolling->parsed()) {
    status = sr_cmd_rolling(&options, &summary);
  } else if (simulate->parsed()) {
    status = sr_cmd_simulate(&options, &summary);
  }

  if (status != SR_OK) {
    std::fprintf(stderr, "error: %s\n", sr_last_error());
    return 1;
  }
  if (summary != nullptr) {
    std::printf("%s\n", summary);
    sr_string_free(summary);
  }
  return 0;
}
