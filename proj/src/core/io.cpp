#include "core/io.hpp"

#include <fstream>

#include <json.hpp>

#include "core/csv.hpp"
#include "core/error.hpp"

namespace specrisk::io {

namespace {

using nlohmann::json;

const char* band_name(rmt::Band band) {
  switch (band) {
    case rmt::Band::BelowNoise:
      return "below";
    case rmt::Band::Noise:
      return "noise";
    case rmt::Band::AboveNoise:
      return "above";
  }
  return "noise";
}

json method_json(const markowitz::MethodConfig& method) {
  return json{{"cleaning", method.cleaning},
              {"regression", method.regression},
              {"lower_bound", method.bounds.lower},
              {"upper_bound", method.bounds.upper},
              {"grid_points", method.grid_points},
              {"bin_count", method.bin_count},
              {"seed", method.seed},
              {"tag", markowitz::method_tag(method)}};
}

json report_json(const metrics::ComparisonReport& report) {
  json doc{{"ag", report.ag},
              {"mse", report.mse},
              {"angle_deg", report.angle_deg},
              {"dist", report.dist},
              {"d_kl", report.d_kl},
              {"n_points", report.n_points},
              {"bin_count", report.bin_count},
              {"kl_dropped_bins", report.kl_dropped_bins},
              {"method", method_json(report.method)},
              {"tickers", report.tickers}};
  if (!report.ag_error.empty()) doc["ag_error"] = report.ag_error;
  return doc;
}

}  // namespace

void write_frontier_csv(std::ostream& out, const markowitz::Frontier& frontier,
                        const std::vector<std::string>& tickers) {
  out << "target_return,risk,feasible";
  for (std::size_t j = 1; j <= tickers.size(); ++j) out << ",w_" << j;
  out << '\n';
  for (const auto& point : frontier.points) {
    out << format_double(point.target_return) << ','
        << (point.feasible ? format_double(point.risk) : "nan") << ','
        << (point.feasible ? 1 : 0);
    for (std::size_t j = 0; j < tickers.size(); ++j) {
      out << ',';
      if (point.feasible) {
        out << format_double(point.weights[static_cast<Eigen::Index>(j)]);
      } else {
        out << "nan";
      }
    }
    out << '\n';
  }
}

void write_frontier_json(std::ostream& out, const markowitz::Frontier& frontier,
                         const std::vector<std::string>& tickers) {
  json points = json::array();
  for (const auto& point : frontier.points) {
    json entry{{"target_return", point.target_return}, {"feasible", point.feasible}};
    if (point.feasible) {
      entry["risk"] = point.risk;
      std::vector<double> w(point.weights.data(), point.weights.data() + point.weights.size());
      entry["weights"] = w;
    } else {
      entry["risk"] = nullptr;
      entry["weights"] = nullptr;
    }
    points.push_back(std::move(entry));
  }
  json doc{{"tickers", tickers}, {"gmv_return", frontier.gmv_return}, {"points", points}};
  out << doc.dump(2) << '\n';
}

void write_spectrum_csv(std::ostream& out, const rmt::SpectralDecomposition& decomp) {
  out << "k,eigenvalue,band\n";
  for (Eigen::Index k = 0; k < decomp.size(); ++k) {
    out << (k + 1) << ',' << format_double(decomp.eigenvalues()[k]) << ','
        << band_name(decomp.bands()[static_cast<std::size_t>(k)]) << '\n';
  }
}

void write_mp_density_csv(std::ostream& out, const rmt::MPParams& params, int n_points) {
  if (n_points < 2) fail(ErrorCode::InvalidArgument, "density trace needs at least 2 points");
  const auto [lo, hi] = rmt::mp_bounds(params);
  out << "lambda,rho\n";
  for (int i = 0; i < n_points; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n_points - 1);
    out << format_double(x) << ',' << format_double(rmt::mp_density(x, params)) << '\n';
  }
}

void write_qq_csv(std::ostream& out,
                  const std::vector<std::pair<double, double>>& points) {
  out << "reference_quantile,sample_quantile\n";
  for (const auto& [x, y] : points) {
    out << format_double(x) << ',' << format_double(y) << '\n';
  }
}

void write_eigenvalue_samples_csv(std::ostream& out,
                                  const std::vector<std::vector<double>>& samples) {
  out << "sim,eigenvalue\n";
  for (std::size_t s = 0; s < samples.size(); ++s) {
    for (const double ev : samples[s]) {
      out << s << ',' << format_double(ev) << '\n';
    }
  }
}

void write_ks_json(std::ostream& out, const rmt::KSResult& result) {
  json doc{{"statistic", result.statistic},
           {"p_value", result.p_value},
           {"n_effective", result.n_effective}};
  out << doc.dump(2) << '\n';
}

void write_correlation_csv(std::ostream& out, const rmt::CorrelationMatrix& corr) {
  out << "ticker";
  for (const auto& t : corr.tickers()) out << ',' << t;
  out << '\n';
  for (Eigen::Index i = 0; i < corr.size(); ++i) {
    out << corr.tickers()[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < corr.size(); ++j) {
      out << ',' << format_double(corr.values()(i, j));
    }
    out << '\n';
  }
}

void write_report_json(std::ostream& out, const metrics::ComparisonReport& report) {
  out << report_json(report).dump(2) << '\n';
}

void write_reports_csv(std::ostream& out, const std::vector<ReportRow>& rows) {
  out << "window,estimation_range,evaluation_range,method,cleaning,regression,"
         "lower_bound,upper_bound,n_points,ag,mse,angle_deg,dist,d_kl,bin_count,"
         "kl_dropped_bins,min_pred_risk,max_pred_risk,min_real_risk,max_real_risk,error\n";
  for (const auto& row : rows) {
    const auto& r = row.report;
    std::string note = row.error;
    for (auto& c : note) {
      if (c == ',' || c == '\n' || c == '\r') c = ';';
    }
    out << row.window << ',' << row.estimation_range << ',' << row.evaluation_range << ','
        << markowitz::method_tag(r.method) << ',' << (r.method.cleaning ? 1 : 0) << ','
        << (r.method.regression ? 1 : 0) << ',' << format_double(r.method.bounds.lower) << ','
        << format_double(r.method.bounds.upper) << ',' << r.n_points << ','
        << format_double(r.ag) << ',' << format_double(r.mse) << ','
        << format_double(r.angle_deg) << ',' << format_double(r.dist) << ','
        << format_double(r.d_kl) << ',' << r.bin_count << ',' << r.kl_dropped_bins << ','
        << format_double(row.min_pred_risk) << ',' << format_double(row.max_pred_risk) << ','
        << format_double(row.min_real_risk) << ',' << format_double(row.max_real_risk) << ','
        << note << '\n';
  }
}

std::string fnv1a64_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot open '" + path.string() + "' for hashing");
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  char buffer[65536];
  while (in.read(buffer, sizeof(buffer)) || in.gcount() > 0) {
    const std::streamsize got = in.gcount();
    for (std::streamsize i = 0; i < got; ++i) {
      hash ^= static_cast<unsigned char>(buffer[i]);
      hash *= 0x100000001b3ULL;
    }
  }
  char hex[17];
  std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(hash));
  return hex;
}

std::string json_method(const markowitz::MethodConfig& method) {
  return method_json(method).dump(2);
}

}  // namespace specrisk::io
