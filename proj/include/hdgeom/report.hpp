#pragma once

// Monte Carlo experiment reports and their file formats.
//
//   report.json     {"name", "tool_version", "seed", "params", "per_replicate", "summary"}
//   replicates.csv  replicate,value
//   hist.csv        bin_left,bin_right,count
//
// Numbers in CSV files are printed with %.17g so they round-trip exactly.

#include <json.hpp>  // nlohmann/json, vendored

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "hdgeom/errors.hpp"
#include "hdgeom/version.hpp"

namespace hdgeom {

using Json = nlohmann::json;

struct Summary {
  double min = 0, q1 = 0, median = 0, q3 = 0, max = 0, mean = 0, sd = 0;

  friend bool operator==(const Summary&, const Summary&) = default;
};

/// Type-7 quantile (linear interpolation between order statistics) of sorted data.
inline double quantile_sorted(std::span<const double> sorted, double prob) {
  if (sorted.empty()) throw ArgumentError("quantile of empty sample");
  if (!(prob >= 0.0 && prob <= 1.0)) throw ArgumentError("quantile probability outside [0,1]");
  const double h = (static_cast<double>(sorted.size()) - 1.0) * prob;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

inline double quantile(std::span<const double> values, double prob) {
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  return quantile_sorted(sorted, prob);
}

/// Summary statistics; sd is the n-1 sample standard deviation (0 for one value).
inline Summary summarize(std::span<const double> values) {
  if (values.empty()) throw ArgumentError("summary of empty sample");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  Summary s;
  s.min = sorted.front();
  s.max = sorted.back();
  s.q1 = quantile_sorted(sorted, 0.25);
  s.median = quantile_sorted(sorted, 0.5);
  s.q3 = quantile_sorted(sorted, 0.75);
  // Accumulate in replicate order, not sorted order.
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return s;
}

struct ExperimentReport {
  std::string name;
  Json params = Json::object();
  std::uint64_t seed = 0;
  std::vector<double> per_replicate;
  Summary summary;

  double iqr() const { return summary.q3 - summary.q1; }
};

inline ExperimentReport make_report(std::string name, Json params, std::uint64_t seed, std::vector<double> values) {
  ExperimentReport r{std::move(name), std::move(params), seed, std::move(values), {}};
  r.summary = summarize(r.per_replicate);
  return r;
}

inline Json to_json(const Summary& s) {
  return Json{{"min", s.min}, {"q1", s.q1}, {"median", s.median}, {"q3", s.q3},
              {"max", s.max}, {"mean", s.mean}, {"sd", s.sd}};
}

inline Json to_json(const ExperimentReport& r) {
  Json j;
  j["name"] = r.name;
  j["tool_version"] = kVersion;
  j["seed"] = r.seed;
  j["params"] = r.params;
  j["per_replicate"] = r.per_replicate;
  j["summary"] = to_json(r.summary);
  return j;
}

inline ExperimentReport report_from_json(const Json& j) {
  ExperimentReport r;
  r.name = j.at("name").get<std::string>();
  r.params = j.at("params");
  r.seed = j.at("seed").get<std::uint64_t>();
  r.per_replicate = j.at("per_replicate").get<std::vector<double>>();
  const Json& s = j.at("summary");
  r.summary = {s.at("min"), s.at("q1"), s.at("median"), s.at("q3"), s.at("max"), s.at("mean"), s.at("sd")};
  return r;
}

struct HistogramBin {
  double left = 0, right = 0;
  std::size_t count = 0;
};

/// Equal-width bins over [min, max]; the last bin is closed on the right.
inline std::vector<HistogramBin> histogram(std::span<const double> values, std::size_t bins = 20) {
  if (bins == 0) throw ArgumentError("histogram needs at least one bin");
  if (values.empty()) throw ArgumentError("histogram of empty sample");
  auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  double lo = *lo_it, hi = *hi_it;
  if (!(std::isfinite(lo) && std::isfinite(hi))) throw DomainError("histogram of non-finite values");
  if (hi == lo) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double width = (hi - lo) / static_cast<double>(bins);
  std::vector<HistogramBin> out(bins);
  for (std::size_t b = 0; b < bins; ++b) {
    out[b].left = lo + width * static_cast<double>(b);
    out[b].right = b + 1 == bins ? hi : lo + width * static_cast<double>(b + 1);
  }
  for (double v : values) {
    auto b = static_cast<std::size_t>((v - lo) / width);
    out[std::min(b, bins - 1)].count++;
  }
  return out;
}

inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_replicates_csv(std::ostream& os, const ExperimentReport& r) {
  os << "replicate,value\n";
  for (std::size_t i = 0; i < r.per_replicate.size(); ++i) os << i << ',' << format_double(r.per_replicate[i]) << '\n';
}

inline void write_histogram_csv(std::ostream& os, std::span<const HistogramBin> bins) {
  os << "bin_left,bin_right,count\n";
  for (const auto& b : bins) os << format_double(b.left) << ',' << format_double(b.right) << ',' << b.count << '\n';
}

}  // namespace hdgeom
