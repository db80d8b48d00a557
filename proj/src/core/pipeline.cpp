#include "core/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include <json.hpp>

#include "core/csv.hpp"
#include "core/error.hpp"
#include "core/io.hpp"
#include "core/version.hpp"

namespace specrisk::pipeline {

namespace {

using nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

RiskEnvelope envelope_of(const markowitz::PairResult& pair) {
  RiskEnvelope env{kNaN, kNaN, kNaN, kNaN};
  const auto scan = [](const markowitz::Frontier& f, double* lo, double* hi) {
    bool any = false;
    for (const auto& p : f.points) {
      if (!p.feasible) continue;
      if (!any) {
        *lo = p.risk;
        *hi = p.risk;
        any = true;
      } else {
        *lo = std::min(*lo, p.risk);
        *hi = std::max(*hi, p.risk);
      }
    }
  };
  scan(pair.predicted, &env.min_pred, &env.max_pred);
  scan(pair.realized, &env.min_real, &env.max_real);
  return env;
}

PairOutcome run_method(const marketdata::ReturnPanel& previous,
                       const marketdata::ReturnPanel& target,
                       const markowitz::MethodConfig& method) {
  PairOutcome outcome;
  outcome.method = method;
  outcome.q_prev = previous.q_ratio();
  outcome.q_target = target.q_ratio();
  try {
    markowitz::PairResult pair = markowitz::frontier_pair(previous, target, method);
    outcome.report = metrics::compare(pair.predicted, pair.realized, pair.pred_corr,
                                      pair.real_corr, method);
    outcome.envelope = envelope_of(pair);
    outcome.pair = std::move(pair);
  } catch (const Error& e) {
    outcome.error = e.what();
  }
  return outcome;
}

std::vector<Eigen::Index> liquid_indices(const marketdata::PricePanel& panel) {
  std::vector<Eigen::Index> keep;
  for (Eigen::Index j = 0; j < panel.n_assets(); ++j) {
    bool liquid = true;
    for (Eigen::Index i = 0; i < panel.n_dates() && liquid; ++i) {
      liquid = panel.present(i, j);
    }
    if (liquid) keep.push_back(j);
  }
  return keep;
}

std::string range_string(const Date& a, const Date& b) {
  return a.to_string() + ":" + b.to_string();
}

// ---------------------------------------------------------------------------
// Run-directory plumbing shared by the command runners.

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::Io, "cannot open '" + path.string() + "' for writing");
  out << contents;
  if (!out) fail(ErrorCode::Io, "failed writing '" + path.string() + "'");
}

template <typename Fn>
void write_stream(const std::filesystem::path& path, Fn&& fn) {
  std::ostringstream buffer;
  fn(buffer);
  write_file(path, buffer.str());
}

json options_json(const RunOptions& options) {
  json doc{{"input", options.input.string()},
           {"layout", options.layout == marketdata::Layout::Long ? "long" : "wide"},
           {"missing_sentinel", options.missing_sentinel},
           {"out", options.out_dir.string()},
           {"cleaning", options.method.cleaning},
           {"regression", options.method.regression},
           {"lower_bound", options.method.bounds.lower},
           {"upper_bound", options.method.bounds.upper},
           {"grid_points", options.method.grid_points},
           {"bin_count", options.method.bin_count},
           {"seed", options.method.seed},
           {"method_mask", options.method_mask},
           {"window_length", options.window.window_length},
           {"step", options.window.step},
           {"n_sims", options.n_sims}};
  if (options.previous_range) {
    doc["previous_range"] = range_string(options.previous_range->begin,
                                         options.previous_range->end);
  }
  if (options.target_range) {
    doc["target_range"] = range_string(options.target_range->begin,
                                       options.target_range->end);
  }
  if (options.external_index) doc["index"] = options.external_index->string();
  return doc;
}

void write_run_metadata(const RunOptions& options, const json& extra_config) {
  json manifest{{"tool", {{"name", kToolName}, {"version", kToolVersion}}},
                {"command", options.command_echo}};
  json inputs = json::array();
  inputs.push_back({{"path", options.input.string()},
                    {"fnv1a64", io::fnv1a64_file(options.input)}});
  if (options.external_index) {
    inputs.push_back({{"path", options.external_index->string()},
                      {"fnv1a64", io::fnv1a64_file(*options.external_index)}});
  }
  manifest["inputs"] = inputs;
  write_file(options.out_dir / "manifest.json", manifest.dump(2) + "\n");

  json config = options_json(options);
  for (const auto& [key, value] : extra_config.items()) config[key] = value;
  write_file(options.out_dir / "config.json", config.dump(2) + "\n");
}

marketdata::PricePanel load_panel(const RunOptions& options) {
  std::ifstream in(options.input, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot open input file '" + options.input.string() + "'");
  marketdata::ParseOptions parse;
  parse.layout = options.layout;
  parse.missing_sentinel = options.missing_sentinel;
  return marketdata::parse_prices(in, parse);
}

void ensure_out_dir(const RunOptions& options) {
  if (options.out_dir.empty()) {
    fail(ErrorCode::InvalidArgument, "an output directory is required (--out DIR)");
  }
  std::filesystem::create_directories(options.out_dir);
}

marketdata::ReturnPanel liquid_returns(const marketdata::PricePanel& panel) {
  return marketdata::log_returns(marketdata::filter_fully_liquid(panel));
}

singleindex::IndexSeries aligned_external_index(const std::filesystem::path& path,
                                                const marketdata::ReturnPanel& panel) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot open index file '" + path.string() + "'");
  const singleindex::IndexSeries raw = singleindex::read_index_csv(in);
  std::map<Date, double> by_date;
  for (Eigen::Index i = 0; i < raw.values.size(); ++i) {
    by_date[raw.dates[static_cast<std::size_t>(i)]] = raw.values[i];
  }
  singleindex::IndexSeries aligned;
  aligned.source = singleindex::IndexSource::External;
  aligned.dates = panel.dates();
  aligned.values.resize(panel.n_obs());
  for (Eigen::Index i = 0; i < panel.n_obs(); ++i) {
    const Date& d = panel.dates()[static_cast<std::size_t>(i)];
    const auto it = by_date.find(d);
    if (it == by_date.end()) {
      fail(ErrorCode::Precondition, "index file lacks a return for " + d.to_string());
    }
    aligned.values[i] = it->second;
  }
  return aligned;
}

singleindex::IndexSeries market_index(const RunOptions& options,
                                      const marketdata::ReturnPanel& returns) {
  if (options.external_index) return aligned_external_index(*options.external_index, returns);
  const auto decomp = rmt::decompose(rmt::pearson_correlation(returns),
                                     rmt::MPParams{returns.q_ratio(), 1.0});
  return singleindex::eigen_market_index(returns, decomp);
}

io::ReportRow report_row(const std::string& window, const std::string& est,
                         const std::string& eval, const PairOutcome& outcome) {
  io::ReportRow row;
  row.window = window;
  row.estimation_range = est;
  row.evaluation_range = eval;
  if (outcome.report) {
    row.report = *outcome.report;
  } else {
    row.report.method = outcome.method;
    row.report.ag = kNaN;
    row.report.mse = kNaN;
    row.report.angle_deg = kNaN;
    row.report.dist = kNaN;
    row.report.d_kl = kNaN;
    row.report.bin_count = outcome.method.bin_count;
  }
  row.min_pred_risk = outcome.envelope.min_pred;
  row.max_pred_risk = outcome.envelope.max_pred;
  row.min_real_risk = outcome.envelope.min_real;
  row.max_real_risk = outcome.envelope.max_real;
  row.error = outcome.error.empty() ? row.report.ag_error : outcome.error;
  return row;
}

}  // namespace

std::vector<markowitz::MethodConfig> expand_methods(const markowitz::MethodConfig& base,
                                                    unsigned method_mask) {
  if (method_mask == 0) method_mask = 0xF;
  std::vector<markowitz::MethodConfig> methods;
  for (unsigned bit = 0; bit < 4; ++bit) {
    if (!(method_mask & (1u << bit))) continue;
    markowitz::MethodConfig m = base;
    m.cleaning = (bit == 1 || bit == 3);
    m.regression = (bit == 2 || bit == 3);
    methods.push_back(m);
  }
  return methods;
}

std::vector<PairOutcome> run_year_pair(const marketdata::PricePanel& prices,
                                       const DateRange& previous_range,
                                       const DateRange& target_range,
                                       const std::vector<markowitz::MethodConfig>& methods) {
  const marketdata::PricePanel prev_slice = marketdata::slice_dates(prices, previous_range);
  const marketdata::PricePanel target_slice = marketdata::slice_dates(prices, target_range);
  if (prev_slice.n_dates() < 3 || target_slice.n_dates() < 3) {
    fail(ErrorCode::Precondition, "each date range needs at least 3 trading days");
  }

  // Universe: tickers fully liquid over BOTH ranges.
  const auto prev_liquid = liquid_indices(prev_slice);
  const auto target_liquid = liquid_indices(target_slice);
  std::vector<Eigen::Index> universe;
  std::set_intersection(prev_liquid.begin(), prev_liquid.end(), target_liquid.begin(),
                        target_liquid.end(), std::back_inserter(universe));
  if (universe.empty()) {
    fail(ErrorCode::EmptyUniverse, "no ticker is fully liquid over both date ranges");
  }

  const auto prev_returns = marketdata::log_returns(subset_tickers(prev_slice, universe));
  const auto target_returns = marketdata::log_returns(subset_tickers(target_slice, universe));

  std::vector<PairOutcome> outcomes;
  outcomes.reserve(methods.size());
  for (const auto& method : methods) {
    outcomes.push_back(run_method(prev_returns, target_returns, method));
  }
  return outcomes;
}

RollingResult run_rolling(const marketdata::PricePanel& prices, const WindowSpec& spec,
                          const std::vector<markowitz::MethodConfig>& methods) {
  if (spec.window_length < 3) {
    fail(ErrorCode::InvalidArgument, "window length must be at least 3 days");
  }
  if (spec.step < 1) fail(ErrorCode::InvalidArgument, "step must be at least 1 day");

  const auto returns = liquid_returns(prices);
  const Eigen::Index L = returns.n_obs();
  const auto W = static_cast<Eigen::Index>(spec.window_length);
  if (L < 2 * W) {
    fail(ErrorCode::Precondition,
         "insufficient data: " + std::to_string(L) + " return days cannot host one " +
             std::to_string(spec.window_length) + "-day estimation/evaluation pair");
  }

  RollingResult result;
  result.tickers = returns.tickers();
  result.q_ratio = static_cast<double>(W) / static_cast<double>(returns.n_assets());

  for (Eigen::Index start = 0; start + 2 * W <= L;
       start += static_cast<Eigen::Index>(spec.step)) {
    const auto est = returns.window(start, W);
    const auto eval = returns.window(start + W, W);
    WindowOutcome window;
    window.index = static_cast<int>(result.windows.size());
    window.est_begin = est.dates().front();
    window.est_end = est.dates().back();
    window.eval_begin = eval.dates().front();
    window.eval_end = eval.dates().back();
    for (const auto& method : methods) {
      window.outcomes.push_back(run_method(est, eval, method));
    }
    result.windows.push_back(std::move(window));
  }
  return result;
}

std::vector<double> index_window_volatility(const singleindex::IndexSeries& index,
                                            const WindowSpec& spec) {
  const auto L = static_cast<Eigen::Index>(index.values.size());
  const auto W = static_cast<Eigen::Index>(spec.window_length);
  if (spec.window_length < 2) {
    fail(ErrorCode::InvalidArgument, "volatility window must be at least 2 days");
  }
  if (spec.step < 1) fail(ErrorCode::InvalidArgument, "step must be at least 1 day");
  if (L < W) fail(ErrorCode::Precondition, "insufficient data for one volatility window");
  std::vector<double> out;
  for (Eigen::Index start = 0; start + W <= L;
       start += static_cast<Eigen::Index>(spec.step)) {
    const auto slice = index.values.segment(start, W);
    if (slice.maxCoeff() == slice.minCoeff()) {
      out.push_back(0.0);  // constant window, exactly
      continue;
    }
    const double mean = slice.mean();
    const double ss = (slice.array() - mean).matrix().squaredNorm();
    out.push_back(std::sqrt(ss / static_cast<double>(W - 1)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Command runners.

std::string run_ingest(const RunOptions& options) {
  ensure_out_dir(options);
  const auto panel = load_panel(options);
  write_stream(options.out_dir / "panel.csv", [&](std::ostream& out) {
    marketdata::write_prices(out, panel, marketdata::Layout::Long);
  });

  const auto liquid = liquid_indices(panel);
  json summary{{"n_dates", panel.n_dates()},
               {"n_tickers", panel.n_assets()},
               {"missing_cells", panel.missing_count()},
               {"n_fully_liquid", liquid.size()}};
  std::vector<std::string> liquid_names;
  liquid_names.reserve(liquid.size());
  for (const auto j : liquid) {
    liquid_names.push_back(panel.tickers()[static_cast<std::size_t>(j)]);
  }
  summary["fully_liquid"] = liquid_names;
  write_file(options.out_dir / "ingest.json", summary.dump(2) + "\n");
  write_run_metadata(options, json::object());

  std::ostringstream msg;
  msg << "ingested " << panel.n_dates() << " dates x " << panel.n_assets() << " tickers ("
      << panel.missing_count() << " missing cells); " << liquid.size() << " fully liquid";
  return msg.str();
}

std::string run_spectrum(const RunOptions& options) {
  ensure_out_dir(options);
  const auto returns = liquid_returns(load_panel(options));
  const rmt::MPParams params{returns.q_ratio(), 1.0};
  const auto corr = markowitz::method_correlation(returns, options.method);
  const auto decomp = rmt::decompose(corr, params);

  const std::vector<double> eigenvalues(decomp.eigenvalues().data(),
                                        decomp.eigenvalues().data() + decomp.size());
  const auto ks = rmt::ks_one_sample(eigenvalues, params);
  const auto qq = rmt::qq_points(eigenvalues, params);

  write_stream(options.out_dir / "spectrum.csv",
               [&](std::ostream& out) { io::write_spectrum_csv(out, decomp); });
  write_stream(options.out_dir / "mp_density.csv", [&](std::ostream& out) {
    io::write_mp_density_csv(out, params, 512);
  });
  write_stream(options.out_dir / "qq.csv",
               [&](std::ostream& out) { io::write_qq_csv(out, qq); });
  write_stream(options.out_dir / "ks.json",
               [&](std::ostream& out) { io::write_ks_json(out, ks); });

  json summary{{"q", params.q},
               {"n_assets", returns.n_assets()},
               {"n_obs", returns.n_obs()},
               {"band_lower", decomp.band_lower()},
               {"band_upper", decomp.band_upper()},
               {"n_below", decomp.count(rmt::Band::BelowNoise)},
               {"n_noise", decomp.count(rmt::Band::Noise)},
               {"n_above", decomp.count(rmt::Band::AboveNoise)},
               {"lambda_1", decomp.eigenvalues()[0]},
               {"cleaning", options.method.cleaning},
               {"regression", options.method.regression}};
  if (decomp.size() > 1) summary["lambda_2"] = decomp.eigenvalues()[1];
  if (decomp.count(rmt::Band::Noise) > 0) {
    summary["mean_noise"] = decomp.mean_noise();
  } else {
    summary["mean_noise"] = nullptr;
  }
  write_file(options.out_dir / "spectrum.json", summary.dump(2) + "\n");
  write_run_metadata(options, json::object());

  std::ostringstream msg;
  msg << "spectrum: N=" << returns.n_assets() << " Q=" << format_double(params.q)
      << " lambda_1=" << format_double(decomp.eigenvalues()[0]) << " band=["
      << format_double(decomp.band_lower()) << ", " << format_double(decomp.band_upper())
      << "] above=" << decomp.count(rmt::Band::AboveNoise)
      << " below=" << decomp.count(rmt::Band::BelowNoise)
      << " KS D=" << format_double(ks.statistic) << " p=" << format_double(ks.p_value);
  return msg.str();
}

std::string run_clean(const RunOptions& options) {
  ensure_out_dir(options);
  const auto returns = liquid_returns(load_panel(options));
  markowitz::MethodConfig pre = options.method;
  pre.cleaning = false;
  const auto corr = markowitz::method_correlation(returns, pre);
  const rmt::MPParams params{returns.q_ratio(), 1.0};
  const auto decomp = rmt::decompose(corr, params);
  const auto cleaned = rmt::clean(decomp);

  write_stream(options.out_dir / "correlation.csv",
               [&](std::ostream& out) { io::write_correlation_csv(out, corr); });
  write_stream(options.out_dir / "cleaned_correlation.csv",
               [&](std::ostream& out) { io::write_correlation_csv(out, cleaned); });
  json summary{{"q", params.q},
               {"band_lower", decomp.band_lower()},
               {"band_upper", decomp.band_upper()},
               {"mean_noise", decomp.mean_noise()},
               {"n_noise", decomp.count(rmt::Band::Noise)},
               {"n_below", decomp.count(rmt::Band::BelowNoise)},
               {"n_above", decomp.count(rmt::Band::AboveNoise)},
               {"trace", cleaned.values().trace()},
               {"unit_diag_deviation", cleaned.unit_diag_deviation()},
               {"regression", options.method.regression}};
  write_file(options.out_dir / "clean.json", summary.dump(2) + "\n");
  write_run_metadata(options, json::object());

  std::ostringstream msg;
  msg << "cleaned correlation: mean_noise=" << format_double(decomp.mean_noise())
      << " noise_count=" << decomp.count(rmt::Band::Noise)
      << " diag_deviation=" << format_double(cleaned.unit_diag_deviation());
  return msg.str();
}

std::string run_residuals(const RunOptions& options) {
  ensure_out_dir(options);
  const auto returns = liquid_returns(load_panel(options));
  const auto index = market_index(options, returns);
  const auto fit = singleindex::fit_single_index(returns, index);
  const auto residuals = singleindex::residual_panel(fit);

  write_stream(options.out_dir / "residuals.csv",
               [&](std::ostream& out) { marketdata::write_returns(out, residuals); });
  write_stream(options.out_dir / "fit.csv", [&](std::ostream& out) {
    out << "ticker,intercept,slope\n";
    for (Eigen::Index j = 0; j < residuals.n_assets(); ++j) {
      out << fit.tickers[static_cast<std::size_t>(j)] << ','
          << format_double(fit.intercepts[j]) << ',' << format_double(fit.slopes[j]) << '\n';
    }
  });
  write_stream(options.out_dir / "index.csv", [&](std::ostream& out) {
    out << "date,return\n";
    for (Eigen::Index i = 0; i < index.values.size(); ++i) {
      out << index.dates[static_cast<std::size_t>(i)].to_string() << ','
          << format_double(index.values[i]) << '\n';
    }
  });
  json summary{{"index_source",
                index.source == singleindex::IndexSource::External ? "external"
                                                                   : "eigenportfolio"},
               {"n_assets", returns.n_assets()},
               {"n_obs", returns.n_obs()}};
  write_file(options.out_dir / "residuals.json", summary.dump(2) + "\n");
  write_run_metadata(options, json::object());

  std::ostringstream msg;
  msg << "residuals for " << returns.n_assets() << " tickers over " << returns.n_obs()
      << " days ("
      << (index.source == singleindex::IndexSource::External ? "external index"
                                                             : "eigenportfolio index")
      << ")";
  return msg.str();
}

std::string run_frontier(const RunOptions& options) {
  ensure_out_dir(options);
  const auto returns = liquid_returns(load_panel(options));
  const auto corr = markowitz::method_correlation(returns, options.method);
  const auto cov =
      markowitz::assemble_covariance(corr, returns.column_stddevs(), options.method.regression);
  const auto frontier = markowitz::trace_frontier(cov, returns.column_means(),
                                                  options.method.bounds,
                                                  options.method.grid_points);

  write_stream(options.out_dir / "frontier.csv", [&](std::ostream& out) {
    io::write_frontier_csv(out, frontier, returns.tickers());
  });
  write_stream(options.out_dir / "frontier.json", [&](std::ostream& out) {
    io::write_frontier_json(out, frontier, returns.tickers());
  });
  json meta{{"gmv_return", frontier.gmv_return},
            {"grid_points", frontier.grid.size()},
            {"feasible_points", frontier.feasible_count()},
            {"covariance_min_eigenvalue", cov.min_eigenvalue()},
            {"covariance_clamped", cov.clamped_count()},
            {"method", json::parse(io::json_method(options.method))}};
  write_file(options.out_dir / "frontier_meta.json", meta.dump(2) + "\n");
  write_run_metadata(options, json::object());

  std::ostringstream msg;
  msg << "frontier: " << frontier.feasible_count() << "/" << frontier.grid.size()
      << " feasible points, gmv_return=" << format_double(frontier.gmv_return);
  return msg.str();
}

std::string run_pair(const RunOptions& options) {
  ensure_out_dir(options);
  if (!options.previous_range || !options.target_range) {
    fail(ErrorCode::InvalidArgument,
         "pair needs --prev BEGIN:END and --target BEGIN:END date ranges");
  }
  const auto panel = load_panel(options);
  const auto methods = expand_methods(options.method, options.method_mask);
  const auto outcomes = run_year_pair(panel, *options.previous_range, *options.target_range,
                                      methods);

  const std::string est = range_string(options.previous_range->begin,
                                       options.previous_range->end);
  const std::string eval = range_string(options.target_range->begin,
                                        options.target_range->end);

  std::vector<io::ReportRow> rows;
  std::ostringstream msg;
  msg << "pair " << est << " -> " << eval << "\n";
  for (const auto& outcome : outcomes) {
    const std::string tag = markowitz::method_tag(outcome.method);
    const auto dir = options.out_dir / ("m_" + tag);
    std::filesystem::create_directories(dir);
    rows.push_back(report_row("-", est, eval, outcome));
    if (!outcome.ok()) {
      write_file(dir / "error.txt", outcome.error + "\n");
      msg << "  " << tag << ": FAILED (" << outcome.error << ")\n";
      continue;
    }
    const auto& pair = *outcome.pair;
    write_stream(dir / "report.json",
                 [&](std::ostream& out) { io::write_report_json(out, *outcome.report); });
    write_stream(dir / "frontier_pred.csv", [&](std::ostream& out) {
      io::write_frontier_csv(out, pair.predicted, pair.pred_corr.tickers());
    });
    write_stream(dir / "frontier_real.csv", [&](std::ostream& out) {
      io::write_frontier_csv(out, pair.realized, pair.real_corr.tickers());
    });
    write_stream(dir / "corr_pred.csv",
                 [&](std::ostream& out) { io::write_correlation_csv(out, pair.pred_corr); });
    write_stream(dir / "corr_real.csv",
                 [&](std::ostream& out) { io::write_correlation_csv(out, pair.real_corr); });
    write_stream(dir / "spectrum_pred.csv", [&](std::ostream& out) {
      io::write_spectrum_csv(out, rmt::decompose(pair.pred_corr,
                                                 rmt::MPParams{outcome.q_prev, 1.0}));
    });
    write_stream(dir / "spectrum_real.csv", [&](std::ostream& out) {
      io::write_spectrum_csv(out, rmt::decompose(pair.real_corr,
                                                 rmt::MPParams{outcome.q_target, 1.0}));
    });
    const auto& r = *outcome.report;
    msg << "  " << tag << ": AG=" << format_double(r.ag) << " MSE=" << format_double(r.mse)
        << " angle=" << format_double(r.angle_deg) << " dist=" << format_double(r.dist)
        << " d_kl=" << format_double(r.d_kl) << " (n=" << r.n_points << ")\n";
  }
  write_stream(options.out_dir / "reports.csv",
               [&](std::ostream& out) { io::write_reports_csv(out, rows); });
  write_run_metadata(options, json::object());
  return msg.str();
}

std::string run_rolling_cmd(const RunOptions& options) {
  ensure_out_dir(options);
  const auto panel = load_panel(options);
  const auto methods = expand_methods(options.method, options.method_mask);
  WindowSpec spec = options.window;
  spec.mode = WindowMode::Rolling;
  const auto result = run_rolling(panel, spec, methods);

  std::vector<io::ReportRow> rows;
  for (const auto& window : result.windows) {
    for (const auto& outcome : window.outcomes) {
      rows.push_back(report_row(std::to_string(window.index),
                                range_string(window.est_begin, window.est_end),
                                range_string(window.eval_begin, window.eval_end), outcome));
    }
  }
  write_stream(options.out_dir / "reports.csv",
               [&](std::ostream& out) { io::write_reports_csv(out, rows); });

  // Index volatility diagnostic over the same estimation-window arithmetic.
  const auto returns = liquid_returns(panel);
  const auto index = market_index(options, returns);
  const auto vols = index_window_volatility(index, spec);
  write_stream(options.out_dir / "volatility.csv", [&](std::ostream& out) {
    out << "window,begin,end,volatility\n";
    for (std::size_t i = 0; i < vols.size(); ++i) {
      const auto start = static_cast<std::size_t>(i) * static_cast<std::size_t>(spec.step);
      out << i << ',' << index.dates[start].to_string() << ','
          << index.dates[start + static_cast<std::size_t>(spec.window_length) - 1].to_string()
          << ',' << format_double(vols[i]) << '\n';
    }
  });

  json extra{{"assumption",
              "evaluation window = the window_length days immediately after the estimation "
              "window; mean returns and standard deviations for both frontiers come from the "
              "evaluation window"},
             {"universe", result.tickers},
             {"q", result.q_ratio},
             {"n_windows", result.windows.size()}};
  write_run_metadata(options, extra);

  std::ostringstream msg;
  msg << "rolling: " << result.windows.size() << " windows x " << methods.size()
      << " methods over " << result.tickers.size() << " tickers (Q="
      << format_double(result.q_ratio) << ")";
  return msg.str();
}

std::string run_simulate(const RunOptions& options) {
  ensure_out_dir(options);
  const auto returns = liquid_returns(load_panel(options));
  const rmt::MPParams params{returns.q_ratio(), 1.0};
  const auto samples =
      rmt::shuffle_eigenvalue_sample(returns, options.n_sims, options.method.seed);

  std::vector<double> pooled;
  pooled.reserve(samples.size() * static_cast<std::size_t>(returns.n_assets()));
  for (const auto& sample : samples) pooled.insert(pooled.end(), sample.begin(), sample.end());

  const auto ks1 = rmt::ks_one_sample(pooled, params);
  // Two-sample comparison against an equal-size sample drawn from the MP law
  // at stratified quantile positions.
  const rmt::MPDistribution dist(params);
  std::vector<double> mp_sample;
  mp_sample.reserve(pooled.size());
  const auto n = static_cast<double>(pooled.size());
  for (std::size_t i = 0; i < pooled.size(); ++i) {
    mp_sample.push_back(dist.quantile((static_cast<double>(i) + 0.5) / n));
  }
  const auto ks2 = rmt::ks_two_sample(pooled, mp_sample);

  const auto [lo, hi] = rmt::mp_bounds(params);
  std::size_t inside = 0;
  for (const double ev : pooled) inside += (ev >= lo && ev <= hi);
  const double fraction = static_cast<double>(inside) / static_cast<double>(pooled.size());

  write_stream(options.out_dir / "eigenvalue_samples.csv", [&](std::ostream& out) {
    io::write_eigenvalue_samples_csv(out, samples);
  });
  write_stream(options.out_dir / "ks_one_sample.json",
               [&](std::ostream& out) { io::write_ks_json(out, ks1); });
  write_stream(options.out_dir / "ks_two_sample.json",
               [&](std::ostream& out) { io::write_ks_json(out, ks2); });
  json summary{{"n_sims", options.n_sims},
               {"seed", options.method.seed},
               {"q", params.q},
               {"band_lower", lo},
               {"band_upper", hi},
               {"fraction_in_band", fraction}};
  write_file(options.out_dir / "simulate.json", summary.dump(2) + "\n");
  write_run_metadata(options, json::object());

  std::ostringstream msg;
  msg << "simulate: " << options.n_sims << " shuffles, " << pooled.size()
      << " pooled eigenvalues, " << format_double(fraction * 100.0)
      << "% inside the noise band, one-sample KS D=" << format_double(ks1.statistic)
      << " p=" << format_double(ks1.p_value);
  return msg.str();
}

}  // namespace specrisk::pipeline
