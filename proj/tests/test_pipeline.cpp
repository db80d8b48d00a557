#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "core/error.hpp"
#include "core/pipeline.hpp"
#include "core/rng.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"

using namespace specrisk;
using namespace specrisk::pipeline;

namespace {

namespace fs = std::filesystem;

/// Prices whose daily log-returns follow a one-factor market; the factor
/// variance can be boosted over [burst_begin, burst_end). The market share
/// is kept moderate so the bulk of the correlation spectrum stays inside the
/// noise band and the cleaning methods stay applicable.
marketdata::PricePanel factor_prices(Rng& rng, Eigen::Index days, Eigen::Index n,
                                     double burst_factor = 1.0,
                                     Eigen::Index burst_begin = 0,
                                     Eigen::Index burst_end = 0) {
  std::vector<double> scale(static_cast<std::size_t>(days - 1), 1.0);
  for (Eigen::Index t = burst_begin; t < burst_end && t < days - 1; ++t) {
    scale[static_cast<std::size_t>(t)] = burst_factor;
  }
  // An upward drift keeps every window's best mean return positive, the way
  // a real equity universe behaves over multi-year spans.
  const auto returns =
      synthetic::factor_panel(rng, days - 1, n, 0.006, 0.012, scale, 0.003);
  Eigen::MatrixXd prices(days, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    double level = 100.0;
    prices(0, j) = level;
    for (Eigen::Index t = 1; t < days; ++t) {
      level *= std::exp(returns.returns()(t - 1, j));
      prices(t, j) = level;
    }
  }
  return {synthetic::make_dates(static_cast<std::size_t>(days)),
          synthetic::make_tickers(static_cast<std::size_t>(n)), prices,
          std::vector<std::uint8_t>(static_cast<std::size_t>(days * n), 1)};
}

std::vector<markowitz::MethodConfig> small_methods(unsigned mask, int grid = 12) {
  markowitz::MethodConfig base;
  base.grid_points = grid;
  return expand_methods(base, mask);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "specrisk_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("run_year_pair: identical ranges give zero metrics for all methods") {
  Rng rng(501);
  const auto prices = factor_prices(rng, 81, 6);
  const DateRange range{prices.dates().front(), prices.dates().back()};
  const auto outcomes = run_year_pair(prices, range, range, small_methods(0));
  REQUIRE(outcomes.size() == 4);
  for (const auto& outcome : outcomes) {
    REQUIRE(outcome.ok());
    CHECK(outcome.report->ag == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(outcome.report->mse == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(outcome.report->angle_deg == doctest::Approx(0.0).epsilon(1e-6));
    CHECK(outcome.report->dist == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(outcome.report->d_kl == doctest::Approx(0.0).epsilon(1e-14));
  }
}

TEST_CASE("run_year_pair: a planted regime change raises the raw-method MSE") {
  Rng rng(502);
  // 161 days -> two 80-day halves: [0,80) estimation, [80,161) evaluation.
  const Eigen::Index days = 161;
  const Eigen::Index n = 10;

  // Control market: a single regime throughout.
  const auto control = [&] {
    Rng r(777);
    return synthetic::block_panel(r, days - 1, n, 0.6);
  }();
  // Changed market: same first half, decorrelated second half.
  const auto changed = [&] {
    Rng r(777);
    auto first = synthetic::block_panel(r, days - 1, n, 0.6);
    Rng r2(778);
    const auto second = synthetic::block_panel(r2, days - 1, n, 0.1);
    Eigen::MatrixXd mixed = first.returns();
    mixed.bottomRows(80) = second.returns().bottomRows(80);
    return marketdata::ReturnPanel(first.dates(), first.tickers(), mixed);
  }();

  const auto to_prices = [](const marketdata::ReturnPanel& returns) {
    const Eigen::Index d = returns.n_obs() + 1;
    Eigen::MatrixXd prices(d, returns.n_assets());
    for (Eigen::Index j = 0; j < returns.n_assets(); ++j) {
      double level = 100.0;
      prices(0, j) = level;
      for (Eigen::Index t = 1; t < d; ++t) {
        level *= std::exp(0.01 * returns.returns()(t - 1, j));
        prices(t, j) = level;
      }
    }
    return marketdata::PricePanel(
        synthetic::make_dates(static_cast<std::size_t>(d)), returns.tickers(), prices,
        std::vector<std::uint8_t>(static_cast<std::size_t>(d * returns.n_assets()), 1));
  };

  const auto prices_control = to_prices(control);
  const auto prices_changed = to_prices(changed);
  const DateRange prev{prices_control.dates()[0], prices_control.dates()[79]};
  const DateRange target{prices_control.dates()[80], prices_control.dates().back()};

  const auto raw = small_methods(1u << 0);
  const auto mse_control = run_year_pair(prices_control, prev, target, raw);
  const auto mse_changed = run_year_pair(prices_changed, prev, target, raw);
  REQUIRE(mse_control[0].ok());
  REQUIRE(mse_changed[0].ok());
  CHECK(mse_changed[0].report->mse > mse_control[0].report->mse);
}

TEST_CASE("run_year_pair: universe is the intersection of liquid tickers") {
  Rng rng(503);
  auto base = factor_prices(rng, 61, 4);
  // Ticker 1 has a gap inside the previous range only; ticker 2 inside the
  // target range only. Both must be excluded.
  Eigen::MatrixXd prices = base.prices();
  std::vector<std::uint8_t> present(static_cast<std::size_t>(61 * 4), 1);
  present[static_cast<std::size_t>(10 * 4 + 1)] = 0;
  present[static_cast<std::size_t>(45 * 4 + 2)] = 0;
  const marketdata::PricePanel panel(base.dates(), base.tickers(), prices, present);

  const DateRange prev{panel.dates()[0], panel.dates()[30]};
  const DateRange target{panel.dates()[31], panel.dates()[60]};
  const auto outcomes = run_year_pair(panel, prev, target, small_methods(1u << 0));
  REQUIRE(outcomes[0].ok());
  CHECK(outcomes[0].report->tickers == std::vector<std::string>{"T000", "T003"});
}

TEST_CASE("run_year_pair: a failing method is flagged, not fatal") {
  Rng rng(520);
  // A very strong market mode squeezes the whole bulk below the noise band,
  // so the cleaning methods fail while raw and regress still run.
  const Eigen::Index days = 81;
  const Eigen::Index n = 6;
  const auto returns = synthetic::factor_panel(rng, days - 1, n, 0.02, 0.004, {}, 0.002);
  Eigen::MatrixXd prices(days, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    double level = 100.0;
    prices(0, j) = level;
    for (Eigen::Index t = 1; t < days; ++t) {
      level *= std::exp(returns.returns()(t - 1, j));
      prices(t, j) = level;
    }
  }
  const marketdata::PricePanel panel(
      synthetic::make_dates(static_cast<std::size_t>(days)), returns.tickers(), prices,
      std::vector<std::uint8_t>(static_cast<std::size_t>(days * n), 1));
  const DateRange range{panel.dates().front(), panel.dates().back()};
  const auto outcomes = run_year_pair(panel, range, range, small_methods(0));
  REQUIRE(outcomes.size() == 4);
  CHECK(outcomes[0].ok());  // raw
  CHECK_FALSE(outcomes[1].ok());  // clean: empty noise band
  CHECK(outcomes[1].error.find("Noise band") != std::string::npos);
  CHECK_FALSE(outcomes[1].report.has_value());
  // the flagged row still lands in the batch CSV with its error note
}

TEST_CASE("run_year_pair: empty universe is an explicit error") {
  Rng rng(504);
  auto base = factor_prices(rng, 41, 2);
  std::vector<std::uint8_t> present(static_cast<std::size_t>(41 * 2), 1);
  present[static_cast<std::size_t>(5 * 2 + 0)] = 0;
  present[static_cast<std::size_t>(30 * 2 + 1)] = 0;
  const marketdata::PricePanel panel(base.dates(), base.tickers(), base.prices(), present);
  const DateRange prev{panel.dates()[0], panel.dates()[20]};
  const DateRange target{panel.dates()[21], panel.dates()[40]};
  try {
    run_year_pair(panel, prev, target, small_methods(1u << 0));
    FAIL("expected empty universe");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyUniverse);
  }
}

TEST_CASE("run_rolling: window arithmetic") {
  Rng rng(505);
  const int W = 20;
  // L = 2W return days exactly -> 1 window pair.
  const auto prices = factor_prices(rng, 2 * W + 1, 4);
  WindowSpec spec;
  spec.window_length = W;
  spec.step = 5;
  const auto result = run_rolling(prices, spec, small_methods(1u << 0, 8));
  CHECK(result.windows.size() == 1);
  CHECK(result.q_ratio == doctest::Approx(double(W) / 4.0));
  const auto& window = result.windows[0];
  CHECK(window.est_begin == result.windows[0].est_begin);
  CHECK(window.outcomes.size() == 1);
  REQUIRE(window.outcomes[0].ok());

  SUBCASE("one day short of 2W is insufficient") {
    const auto shorter = factor_prices(rng, 2 * W, 4);
    CHECK_THROWS_AS(run_rolling(shorter, spec, small_methods(1u << 0, 8)), Error);
  }
}

TEST_CASE("run_rolling: MSE series has no trend on an i.i.d. market") {
  Rng rng(506);
  const int W = 30;
  const int n_windows = 200;
  const Eigen::Index days = 2 * W + (n_windows - 1) * 5 + 1;
  const auto prices = factor_prices(rng, days, 5);
  WindowSpec spec;
  spec.window_length = W;
  spec.step = 5;
  const auto result = run_rolling(prices, spec, small_methods(1u << 0, 10));
  REQUIRE(result.windows.size() == static_cast<std::size_t>(n_windows));

  std::vector<double> mse;
  for (const auto& window : result.windows) {
    REQUIRE(window.outcomes[0].ok());
    mse.push_back(window.outcomes[0].report->mse);
  }
  // least-squares slope and its standard error
  const double n = static_cast<double>(mse.size());
  double sx = 0.0;
  double sy = 0.0;
  for (std::size_t i = 0; i < mse.size(); ++i) {
    sx += static_cast<double>(i);
    sy += mse[i];
  }
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < mse.size(); ++i) {
    const double dx = static_cast<double>(i) - mx;
    sxx += dx * dx;
    sxy += dx * (mse[i] - my);
  }
  const double slope = sxy / sxx;
  double rss = 0.0;
  for (std::size_t i = 0; i < mse.size(); ++i) {
    const double fitted = my + slope * (static_cast<double>(i) - mx);
    rss += (mse[i] - fitted) * (mse[i] - fitted);
  }
  const double se = std::sqrt(rss / (n - 2.0) / sxx);
  CHECK(std::abs(slope) <= 2.0 * se);
}

TEST_CASE("run_rolling: a planted volatility burst drives the MSE peak") {
  Rng rng(507);
  const int W = 40;
  const int step = 5;
  const Eigen::Index days = 501;
  // variance x4 in the middle segment (vol x2)
  const Eigen::Index burst_begin = 240;
  const Eigen::Index burst_end = 300;
  const auto prices = factor_prices(rng, days, 6, 2.0, burst_begin, burst_end);
  WindowSpec spec;
  spec.window_length = W;
  spec.step = step;
  const auto result = run_rolling(prices, spec, small_methods(1u << 0, 10));

  std::size_t argmax = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < result.windows.size(); ++i) {
    REQUIRE(result.windows[i].outcomes[0].ok());
    const double mse = result.windows[i].outcomes[0].report->mse;
    if (mse > best) {
      best = mse;
      argmax = i;
    }
  }
  // The worst window pair must touch the burst: its combined [est, eval)
  // return-row span is [argmax*step, argmax*step + 2W).
  const auto span_begin = static_cast<Eigen::Index>(argmax) * step;
  const auto span_end = span_begin + 2 * W;
  CHECK(span_begin < burst_end);
  CHECK(span_end > burst_begin);
}

TEST_CASE("index_window_volatility") {
  SUBCASE("constant index gives all-zero volatility") {
    singleindex::IndexSeries index;
    index.dates = synthetic::make_dates(50);
    index.values = Eigen::VectorXd::Constant(50, 0.001);
    WindowSpec spec;
    spec.window_length = 10;
    spec.step = 5;
    for (const double v : index_window_volatility(index, spec)) {
      CHECK(v == 0.0);
    }
  }
  SUBCASE("matches a two-pass oracle on random data") {
    Rng rng(508);
    singleindex::IndexSeries index;
    index.dates = synthetic::make_dates(60);
    index.values.resize(60);
    for (Eigen::Index t = 0; t < 60; ++t) index.values[t] = 0.01 * rng.gaussian();
    WindowSpec spec;
    spec.window_length = 25;
    spec.step = 7;
    const auto vols = index_window_volatility(index, spec);
    REQUIRE(vols.size() == 6);  // floor((60-25)/7)+1
    for (std::size_t i = 0; i < vols.size(); ++i) {
      std::vector<double> window;
      for (int t = 0; t < 25; ++t) {
        window.push_back(index.values[static_cast<Eigen::Index>(i) * 7 + t]);
      }
      CHECK(vols[i] == doctest::Approx(oracles::stddev_of(window)).epsilon(1e-12));
    }
  }
  SUBCASE("step = W yields floor(L/W) non-overlapping windows") {
    singleindex::IndexSeries index;
    index.dates = synthetic::make_dates(53);
    index.values = Eigen::VectorXd::LinSpaced(53, -0.01, 0.01);
    WindowSpec spec;
    spec.window_length = 10;
    spec.step = 10;
    CHECK(index_window_volatility(index, spec).size() == 5);
  }
  SUBCASE("insufficient data is an error") {
    singleindex::IndexSeries index;
    index.dates = synthetic::make_dates(5);
    index.values = Eigen::VectorXd::Constant(5, 0.01);
    WindowSpec spec;
    spec.window_length = 10;
    spec.step = 1;
    CHECK_THROWS_AS(index_window_volatility(index, spec), Error);
  }
}

TEST_CASE("expand_methods covers exactly the requested subset") {
  markowitz::MethodConfig base;
  base.grid_points = 33;
  const auto all = expand_methods(base, 0);
  REQUIRE(all.size() == 4);
  CHECK_FALSE(all[0].cleaning);
  CHECK_FALSE(all[0].regression);
  CHECK(all[1].cleaning);
  CHECK_FALSE(all[1].regression);
  CHECK_FALSE(all[2].cleaning);
  CHECK(all[2].regression);
  CHECK(all[3].cleaning);
  CHECK(all[3].regression);
  for (const auto& m : all) CHECK(m.grid_points == 33);

  const auto subset = expand_methods(base, (1u << 1) | (1u << 3));
  REQUIRE(subset.size() == 2);
  CHECK(subset[0].cleaning);
  CHECK_FALSE(subset[0].regression);
  CHECK(subset[1].cleaning);
  CHECK(subset[1].regression);
}

TEST_CASE("pair runner writes the run directory and is byte-deterministic") {
  Rng rng(509);
  const auto prices = factor_prices(rng, 101, 5);
  const auto input = fresh_dir("pair_input") / "prices.csv";
  {
    std::ofstream out(input);
    marketdata::write_prices(out, prices, marketdata::Layout::Long);
  }

  RunOptions options;
  options.input = input;
  options.layout = marketdata::Layout::Long;
  options.method.grid_points = 10;
  options.previous_range = DateRange{prices.dates()[0], prices.dates()[50]};
  options.target_range = DateRange{prices.dates()[51], prices.dates().back()};
  options.command_echo = "test pair";

  const auto out_a = fresh_dir("pair_a");
  const auto out_b = fresh_dir("pair_b");
  options.out_dir = out_a;
  const std::string summary_a = run_pair(options);
  options.out_dir = out_b;
  const std::string summary_b = run_pair(options);

  CHECK(summary_a == summary_b);
  // Data artifacts agree across output directories (config.json differs by
  // its echoed --out path, so it is compared on the same-directory rerun
  // below instead).
  for (const auto* name :
       {"manifest.json", "reports.csv", "m_raw/report.json", "m_raw/frontier_pred.csv",
        "m_raw/frontier_real.csv", "m_raw/corr_pred.csv", "m_raw/spectrum_pred.csv",
        "m_clean/report.json", "m_regress/report.json", "m_clean_regress/report.json"}) {
    CAPTURE(name);
    REQUIRE(fs::exists(out_a / name));
    CHECK(read_file(out_a / name) == read_file(out_b / name));
  }

  // Re-running into the same directory reproduces every byte.
  const std::string config_before = read_file(out_a / "config.json");
  const std::string frontier_before = read_file(out_a / "m_raw/frontier_pred.csv");
  options.out_dir = out_a;
  run_pair(options);
  CHECK(read_file(out_a / "config.json") == config_before);
  CHECK(read_file(out_a / "m_raw/frontier_pred.csv") == frontier_before);

  SUBCASE("reports.csv has one row per method plus a header") {
    std::istringstream in(read_file(out_a / "reports.csv"));
    std::string line;
    int lines = 0;
    while (std::getline(in, line)) ++lines;
    CHECK(lines == 5);
  }
}

TEST_CASE("rolling runner emits reports and volatility series") {
  Rng rng(510);
  const auto prices = factor_prices(rng, 121, 4);
  const auto input = fresh_dir("rolling_input") / "prices.csv";
  {
    std::ofstream out(input);
    marketdata::write_prices(out, prices, marketdata::Layout::Long);
  }
  RunOptions options;
  options.input = input;
  options.method.grid_points = 8;
  options.method_mask = 1;  // raw only
  options.window.window_length = 30;
  options.window.step = 15;
  options.out_dir = fresh_dir("rolling_out");
  options.command_echo = "test rolling";
  const std::string summary = run_rolling_cmd(options);
  CHECK(summary.find("windows") != std::string::npos);
  CHECK(fs::exists(options.out_dir / "reports.csv"));
  CHECK(fs::exists(options.out_dir / "volatility.csv"));
  CHECK(fs::exists(options.out_dir / "manifest.json"));
  const std::string config = read_file(options.out_dir / "config.json");
  CHECK(config.find("assumption") != std::string::npos);
}
