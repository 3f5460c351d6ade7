#pragma once

// The hdgeom command-line front end.
//
//   hdgeom concentration --family gaussian --n 100 --c-ratio 3 --reps 100 --seed 7
//   hdgeom spark --family gaussian --n 100 --p 1000 --trials 1000 --reps 100 --seed 7
//   hdgeom grassmann --v1 a.csv --v2 b.csv
//   hdgeom measure --n 10,20 --s 1,2 --delta 0.1,0.3
//   hdgeom bounds --thm 3 --n 100 --gamma 0.2 --delta 0.25
//   hdgeom screen --n 100 --p 1000 --support 0,1,2,3,4 --coef 1,1,1,1,1 --d 5,50,99 --seed 7
//   hdgeom validate-golden --baseline DIR --report DIR
//
// Exit codes: 0 ok, 1 golden mismatch, 2 bad arguments or configuration,
// 3 numerical failure, 4 I/O failure.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hdgeom/bounds.hpp"
#include "hdgeom/concentration.hpp"
#include "hdgeom/errors.hpp"
#include "hdgeom/grassmann.hpp"
#include "hdgeom/io.hpp"
#include "hdgeom/measures.hpp"
#include "hdgeom/report.hpp"
#include "hdgeom/screening.hpp"
#include "hdgeom/spark.hpp"
#include "hdgeom/version.hpp"

namespace hdgeom::cli {

namespace fs = std::filesystem;

enum ExitCode : int {
  kOk = 0,
  kMismatch = 1,
  kInvalidArguments = 2,
  kNumericalFailure = 3,
  kIoFailure = 4,
};

inline constexpr const char* kOutputDirEnv = "HDGEOM_OUTPUT_DIR";

enum class Format { csv, json, both };

struct CommonOptions {
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string output_dir;
  Format format = Format::both;
  bool force = false;
  unsigned threads = 1;
  std::size_t bins = 20;

  bool want_csv() const { return format != Format::json; }
  bool want_json() const { return format != Format::csv; }
};

struct DistributionOptions {
  std::string family = "gaussian";
  double dof = 10.0;
  std::string covariance_file;

  EllipticalSpec spec(Eigen::Index p) const {
    EllipticalSpec s;
    s.family = parse_family(family);
    s.p = p;
    s.dof = s.family == Family::multivariate_t ? dof : 0.0;
    if (!covariance_file.empty()) s.covariance = io::read_csv_matrix(covariance_file);
    return s;
  }
};

/// Pending output files; nothing is written until every target is cleared.
class OutputSet {
 public:
  OutputSet(const CommonOptions& common) : dir_(common.output_dir), force_(common.force) {}

  void add(const std::string& name, std::string contents) { files_.emplace_back(name, std::move(contents)); }

  void commit() const {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw IoError("cannot create output directory " + dir_.string() + ": " + ec.message());
    if (!force_)
      for (const auto& [name, _] : files_)
        if (fs::exists(dir_ / name)) throw IoError((dir_ / name).string() + " exists (use --force to overwrite)");
    for (const auto& [name, contents] : files_) io::write_text(dir_ / name, contents);
  }

  std::string list() const {
    std::string out;
    for (const auto& [name, _] : files_) out += (out.empty() ? "" : ",") + name;
    return out;
  }

 private:
  fs::path dir_;
  bool force_;
  std::vector<std::pair<std::string, std::string>> files_;
};

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline void add_report_files(OutputSet& out, const CommonOptions& common, const ExperimentReport& report,
                             const Json& extra = Json::object()) {
  if (common.want_json()) {
    Json j = to_json(report);
    for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
    out.add("report.json", dump(j));
  }
  if (common.want_csv()) {
    std::ostringstream reps, hist;
    write_replicates_csv(reps, report);
    write_histogram_csv(hist, histogram(report.per_replicate, common.bins));
    out.add("replicates.csv", reps.str());
    out.add("hist.csv", hist.str());
  }
}

inline std::string fmt6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

inline void require_seed(const CommonOptions& common) {
  if (!common.seed_given) throw ConfigError("--seed is required for stochastic subcommands");
}

// ---------------------------------------------------------------------------
// validate-golden

namespace detail {

inline std::optional<std::string> first_difference(const Json& a, const Json& b, const std::string& path) {
  if (a.type() != b.type()) return path.empty() ? "<root>" : path;
  if (a.is_object()) {
    std::set<std::string> keys;
    for (auto it = a.begin(); it != a.end(); ++it) keys.insert(it.key());
    for (auto it = b.begin(); it != b.end(); ++it) keys.insert(it.key());
    for (const auto& k : keys) {
      const std::string sub = path.empty() ? k : path + "." + k;
      if (!a.contains(k) || !b.contains(k)) return sub;
      if (auto d = first_difference(a.at(k), b.at(k), sub)) return d;
    }
    return std::nullopt;
  }
  if (a.is_array()) {
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i)
      if (auto d = first_difference(a.at(i), b.at(i), path + "[" + std::to_string(i) + "]")) return d;
    if (a.size() != b.size()) return path + "[" + std::to_string(n) + "]";
    return std::nullopt;
  }
  if (a.dump() != b.dump()) return path.empty() ? "<root>" : path;
  return std::nullopt;
}

inline Json strip_version(Json j) {
  if (j.is_object()) j.erase("tool_version");
  return j;
}

}  // namespace detail

/// Compares every JSON report under baseline_dir with its namesake in
/// report_dir, ignoring the tool_version field. Returns 0 iff all match.
inline int validate_golden(const fs::path& baseline_dir, const fs::path& report_dir, std::ostream& out) {
  if (!fs::is_directory(baseline_dir)) throw IoError("baseline directory not found: " + baseline_dir.string());
  if (!fs::is_directory(report_dir)) throw IoError("report directory not found: " + report_dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(baseline_dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) throw IoError("no JSON reports under " + baseline_dir.string());

  for (const auto& base : files) {
    const fs::path rel = fs::relative(base, baseline_dir);
    const fs::path other = report_dir / rel;
    if (!fs::exists(other)) {
      out << "mismatch: " << rel.string() << ": missing from report directory\n";
      return kMismatch;
    }
    Json a, b;
    try {
      a = detail::strip_version(Json::parse(io::read_text(base)));
      b = detail::strip_version(Json::parse(io::read_text(other)));
    } catch (const Json::parse_error& e) {
      throw IoError(std::string("malformed JSON: ") + e.what());
    }
    if (a.dump() != b.dump()) {
      const auto where = detail::first_difference(a, b, "").value_or("<root>");
      out << "mismatch: " << rel.string() << ": first differing field " << where << "\n";
      return kMismatch;
    }
  }
  out << "ok: " << files.size() << " report(s) identical\n";
  return kOk;
}

// ---------------------------------------------------------------------------
// config files: "key = value" lines; keys are long option names without "--".

namespace detail {

inline std::map<std::string, std::string> read_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path.string());
  std::map<std::string, std::string> out;
  std::string line;
  std::size_t line_no = 0;
  const auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string{};
    const auto e = s.find_last_not_of(" \t\r");
    s = s.substr(b, e - b + 1);
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
    return s;
  };
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": expected key = value");
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

// Splices config entries right after the subcommand name; flags given
// on the command line win because their keys are skipped here.
inline std::vector<std::string> apply_config(std::vector<std::string> args) {
  std::optional<std::string> config_path;
  std::vector<std::string> kept;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      config_path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      config_path = args[i].substr(9);
    } else {
      kept.push_back(args[i]);
    }
  }
  if (!config_path) return kept;
  if (kept.size() < 2) throw ConfigError("--config must follow a subcommand");
  std::set<std::string> given;
  for (const auto& a : kept)
    if (a.rfind("--", 0) == 0) given.insert(a.substr(2, a.find('=') == std::string::npos ? std::string::npos : a.find('=') - 2));
  std::vector<std::string> out{kept[0], kept[1]};
  for (const auto& [key, value] : read_config(*config_path)) {
    if (given.count(key)) continue;
    if (value == "true") {
      out.push_back("--" + key);
    } else if (value != "false") {
      out.push_back("--" + key);
      out.push_back(value);
    }
  }
  out.insert(out.end(), kept.begin() + 2, kept.end());
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------

inline void add_common(CLI::App* sub, CommonOptions& common, bool stochastic) {
  if (stochastic) {
    sub->add_option("--seed", common.seed, "Master seed (required)")->each([&](const std::string&) {
      common.seed_given = true;
    });
    sub->add_option("--threads", common.threads, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--bins", common.bins, "Histogram bin count")->check(CLI::PositiveNumber);
  }
  sub->add_option("--out", common.output_dir, "Output directory (default $HDGEOM_OUTPUT_DIR or .)");
  sub->add_option("--format", common.format, "csv, json or both")
      ->transform(CLI::CheckedTransformer(std::map<std::string, Format>{
          {"csv", Format::csv}, {"json", Format::json}, {"both", Format::both}}));
  sub->add_flag("--force", common.force, "Overwrite existing output files");
}

inline void add_distribution(CLI::App* sub, DistributionOptions& dist) {
  sub->add_option("--family", dist.family, "gaussian, laplace or t");
  sub->add_option("--dof", dist.dof, "Degrees of freedom for the t family");
  sub->add_option("--cov", dist.covariance_file, "Covariance CSV (p x p, header-free)");
}

/// Runs the tool on `args` (args[0] is the program name).
inline int run(std::vector<std::string> args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"hdgeom: random design matrices, robust spark, Grassmann geometry and dimensionality bounds"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  CommonOptions common;
  if (const char* env = std::getenv(kOutputDirEnv)) common.output_dir = env;
  if (common.output_dir.empty()) common.output_dir = ".";
  DistributionOptions dist;

  // concentration
  Eigen::Index n = 100, p = 1000;
  double c_ratio = 3.0;
  std::size_t reps = 100, trials = 1000;
  std::optional<double> c1;
  std::optional<Eigen::Index> k_override;
  auto* conc = app.add_subcommand("concentration", "Condition number of p~^{-1} X X^T over replicates");
  add_common(conc, common, true);
  add_distribution(conc, dist);
  conc->add_option("--n", n, "Rows")->check(CLI::PositiveNumber);
  conc->add_option("--c-ratio", c_ratio, "Column ratio p~/n (> 1)");
  conc->add_option("--reps", reps, "Replicates")->check(CLI::PositiveNumber);
  conc->add_option("--c1", c1, "Threshold for the eigenvalue deviation probability");

  auto* spark = app.add_subcommand("spark", "Sampled minimum of sigma_min over random n x k submatrices");
  add_common(spark, common, true);
  add_distribution(spark, dist);
  spark->add_option("--n", n, "Rows")->check(CLI::PositiveNumber);
  spark->add_option("--p", p, "Columns")->check(CLI::PositiveNumber);
  spark->add_option("--trials", trials, "Submatrices per replicate")->check(CLI::PositiveNumber);
  spark->add_option("--reps", reps, "Replicates")->check(CLI::PositiveNumber);
  spark->add_option("--k", k_override, "Submatrix width (default ceil(2n/ln p))")->check(CLI::PositiveNumber);

  std::string v1_file, v2_file;
  auto* grass = app.add_subcommand("grassmann", "Principal angles and distances between two column spans");
  add_common(grass, common, false);
  grass->add_option("--v1", v1_file, "Generator columns of V1 (CSV, n x s1)")->required();
  grass->add_option("--v2", v2_file, "Generator columns of V2 (CSV, n x s2)")->required();

  std::vector<int> n_list{10}, s_list{1};
  std::vector<double> delta_list{0.5};
  bool with_quadrature = false;
  auto* meas = app.add_subcommand("measure", "Bracket for log nu(B_{delta,d_m}) over a grid");
  add_common(meas, common, false);
  meas->add_option("--n", n_list, "Ambient dimensions")->delimiter(',');
  meas->add_option("--s", s_list, "Subspace dimensions")->delimiter(',');
  meas->add_option("--delta", delta_list, "Radii in (0,1)")->delimiter(',');
  meas->add_flag("--quadrature", with_quadrature, "Add a quadrature column (s <= 3)");

  std::string thm = "3";
  std::vector<double> bn{100}, gamma{0.2}, bdelta{0.25}, delta1{0.1}, rr{0.5}, c_tilde{2.0}, bp{1000};
  auto* bnd = app.add_subcommand("bounds", "Leading-term dimensionality bounds over a grid");
  add_common(bnd, common, false);
  bnd->add_option("--thm", thm, "2, 3, 4, 5, 5exact or cdelta1")
      ->check(CLI::IsMember({"2", "3", "4", "5", "5exact", "cdelta1"}));
  bnd->add_option("--n", bn, "Sample sizes")->delimiter(',');
  bnd->add_option("--gamma", gamma, "s/n ratios in (0,1/2)")->delimiter(',');
  bnd->add_option("--delta", bdelta, "delta values in (0,1)")->delimiter(',');
  bnd->add_option("--delta1", delta1, "delta1 values in (0,delta]")->delimiter(',');
  bnd->add_option("--r", rr, "maximum true-predictor correlation in (0,1)")->delimiter(',');
  bnd->add_option("--c-tilde", c_tilde, "constant for the robust-spark bound")->delimiter(',');
  bnd->add_option("--p", bp, "column counts for the robust-spark bound")->delimiter(',');

  std::vector<Eigen::Index> support{0, 1, 2, 3, 4}, d_list{5, 10, 50, 99};
  std::vector<double> coef{1, 1, 1, 1, 1};
  double noise_sd = 0.5;
  auto* scr = app.add_subcommand("screen", "Sure screening frequency of SIS over a grid of retained sizes");
  add_common(scr, common, true);
  add_distribution(scr, dist);
  scr->add_option("--n", n, "Rows")->check(CLI::PositiveNumber);
  scr->add_option("--p", p, "Columns")->check(CLI::PositiveNumber);
  scr->add_option("--support", support, "True covariate indices")->delimiter(',');
  scr->add_option("--coef", coef, "True coefficients")->delimiter(',');
  scr->add_option("--noise-sd", noise_sd, "Noise standard deviation");
  scr->add_option("--d", d_list, "Retained sizes")->delimiter(',');
  scr->add_option("--reps", reps, "Replicates")->check(CLI::PositiveNumber);

  std::string baseline_dir, report_dir;
  auto* golden = app.add_subcommand("validate-golden", "Compare JSON reports against a baseline directory");
  golden->add_option("--baseline", baseline_dir, "Baseline directory")->required();
  golden->add_option("--report", report_dir, "Report directory")->required();

  std::vector<std::string> argv;
  try {
    argv = detail::apply_config(std::move(args));
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIoFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidArguments;
  }
  if (argv.empty()) argv.push_back("hdgeom");
  std::vector<std::string> reversed(argv.rbegin(), argv.rend() - 1);
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidArguments;
  }

  try {
    OutputSet files(common);
    if (*conc) {
      require_seed(common);
      ConcentrationConfig cfg;
      cfg.spec = dist.spec(1);
      cfg.n = n;
      cfg.c_ratio = c_ratio;
      cfg.replications = reps;
      cfg.seed = common.seed;
      cfg.threads = common.threads;
      if (c1) cfg.c1 = *c1;
      validate(cfg);
      const auto spectra = gram_spectra(cfg);
      std::vector<double> values;
      for (const auto& s : spectra) values.push_back(s.condition_number);
      const auto report = make_report("condition_number", params_json(cfg), cfg.seed, std::move(values));
      Json extra = Json::object();
      if (c1) extra["deviation_probability"] = deviation_probability(spectra, *c1);
      add_report_files(files, common, report, extra);
      files.commit();
      out << "concentration: n=" << n << " p_tilde=" << cfg.columns() << " reps=" << reps
          << " median_condition=" << fmt6(report.summary.median);
      if (c1) out << " deviation_probability=" << fmt6(extra["deviation_probability"].get<double>());
      out << " -> " << files.list() << "\n";
    } else if (*spark) {
      require_seed(common);
      SparkConfig cfg;
      cfg.spec = dist.spec(p);
      cfg.n = n;
      cfg.p = p;
      cfg.submatrix_trials = trials;
      cfg.replications = reps;
      cfg.seed = common.seed;
      cfg.k_override = k_override;
      cfg.threads = common.threads;
      const auto report = min_singular_experiment(cfg);
      add_report_files(files, common, report);
      files.commit();
      out << "spark: n=" << n << " p=" << p << " k=" << cfg.k() << " reps=" << reps
          << " min_sigma=" << fmt6(report.summary.min) << " -> " << files.list() << "\n";
    } else if (*grass) {
      const Subspace a = orthonormalize(io::read_csv_matrix(v1_file));
      const Subspace b = orthonormalize(io::read_csv_matrix(v2_file));
      const auto angles = principal_angles(a, b);
      const auto corr = canonical_correlations(a, b);
      std::optional<ProjectionDistances> proj;
      if (a.dim() == b.dim()) proj = projection_distances(a, b);
      const std::pair<const char*, Metric> metrics[] = {
          {"geodesic", Metric::geodesic}, {"chordal", Metric::chordal}, {"max_chordal", Metric::max_chordal}};
      if (common.want_csv()) {
        std::ostringstream as, ds;
        as << "index,theta,cos_theta\n";
        for (std::size_t i = 0; i < angles.angles.size(); ++i)
          as << i + 1 << ',' << format_double(angles.angles[i]) << ',' << format_double(std::cos(angles.angles[i]))
             << '\n';
        ds << "metric,angle_based,projector_based\n";
        for (const auto& [name, m] : metrics) {
          ds << name << ',' << format_double(distance(angles, m)) << ',';
          if (proj && m == Metric::chordal) ds << format_double(proj->chordal);
          if (proj && m == Metric::max_chordal) ds << format_double(proj->max_chordal);
          ds << '\n';
        }
        files.add("angles.csv", as.str());
        files.add("distances.csv", ds.str());
      }
      if (common.want_json()) {
        Json j{{"tool_version", kVersion}, {"angles", angles.angles}, {"canonical_correlations", corr}};
        for (const auto& [name, m] : metrics) j["distances"][name] = distance(angles, m);
        if (proj) j["projector_distances"] = {{"chordal", proj->chordal}, {"max_chordal", proj->max_chordal}};
        files.add("grassmann.json", dump(j));
      }
      files.commit();
      out << "grassmann: s=" << angles.angles.size() << " d_g=" << fmt6(distance(angles, Metric::geodesic))
          << " d_c=" << fmt6(distance(angles, Metric::chordal)) << " d_m=" << fmt6(distance(angles, Metric::max_chordal))
          << " -> " << files.list() << "\n";
    } else if (*meas) {
      std::ostringstream csv;
      csv << "n,s,delta,log_lower,log_upper" << (with_quadrature ? ",log_quadrature" : "") << "\n";
      Json rows = Json::array();
      for (int nn : n_list)
        for (int ss : s_list)
          for (double dd : delta_list) {
            const auto b = ball_volume_bounds_log(nn, ss, dd);
            csv << nn << ',' << ss << ',' << format_double(dd) << ',' << format_double(b.lower.log_mag()) << ','
                << format_double(b.upper.log_mag());
            Json row{{"n", nn}, {"s", ss}, {"delta", dd}, {"log_lower", b.lower.log_mag()},
                     {"log_upper", b.upper.log_mag()}};
            if (with_quadrature) {
              const double q = nu_quadrature(nn, ss, std::vector<quad::Interval>(ss, {0.0, dd * dd}));
              csv << ',' << format_double(std::log(q));
              row["log_quadrature"] = std::log(q);
            }
            csv << '\n';
            rows.push_back(row);
          }
      if (common.want_csv()) files.add("measure.csv", csv.str());
      if (common.want_json()) files.add("measure.json", dump(Json{{"tool_version", kVersion}, {"rows", rows}}));
      files.commit();
      out << "measure: " << rows.size() << " rows";
      if (rows.size() == 1)
        out << " log_lower=" << fmt6(rows[0]["log_lower"].get<double>())
            << " log_upper=" << fmt6(rows[0]["log_upper"].get<double>());
      out << " -> " << files.list() << "\n";
    } else if (*bnd) {
      // Each theorem sweeps the cartesian product of the parameters it uses.
      std::vector<std::string> columns;
      std::vector<const std::vector<double>*> axes;
      const auto use = [&](const char* name, const std::vector<double>& axis) {
        columns.push_back(name);
        axes.push_back(&axis);
      };
      if (thm == "2") {
        use("n", bn), use("p", bp), use("c_tilde", c_tilde);
      } else if (thm == "3") {
        use("n", bn), use("gamma", gamma), use("delta", bdelta);
      } else if (thm == "4") {
        use("n", bn), use("gamma", gamma), use("delta", bdelta), use("delta1", delta1);
      } else if (thm == "5") {
        use("n", bn), use("delta", bdelta);
      } else if (thm == "5exact") {
        use("n", bn), use("r", rr), use("delta", bdelta);
      } else {
        use("delta1", delta1), use("gamma", gamma);
      }
      const auto evaluate = [&](const std::vector<double>& v) -> double {
        if (thm == "2") return thm2_lower_bound(static_cast<Eigen::Index>(v[0]), static_cast<Eigen::Index>(v[1]), v[2]);
        if (thm == "3") return thm3_log_p_bound({v[0], v[1], v[2], std::nullopt, std::nullopt});
        if (thm == "4") return thm4_log_bound({v[0], v[1], v[2], v[3], std::nullopt});
        if (thm == "5") return thm5_threshold(v[0], v[1]);
        if (thm == "5exact") return thm5_exact_count_bound(static_cast<int>(v[0]), v[1], v[2]);
        return c_delta1(v[0], v[1]);
      };
      std::ostringstream csv;
      for (const auto& c : columns) csv << c << ',';
      csv << "value\n";
      Json rows = Json::array();
      std::vector<std::size_t> idx(axes.size(), 0);
      double last = 0.0;
      for (;;) {
        std::vector<double> point;
        Json row;
        for (std::size_t a = 0; a < axes.size(); ++a) {
          point.push_back((*axes[a])[idx[a]]);
          row[columns[a]] = point.back();
          csv << format_double(point.back()) << ',';
        }
        last = evaluate(point);
        row["value"] = last;
        csv << format_double(last) << '\n';
        rows.push_back(row);
        std::size_t a = axes.size();
        while (a > 0 && ++idx[a - 1] == axes[a - 1]->size()) idx[--a] = 0;
        if (a == 0) break;
      }
      if (common.want_csv()) files.add("bounds.csv", csv.str());
      if (common.want_json())
        files.add("bounds.json", dump(Json{{"tool_version", kVersion}, {"theorem", thm}, {"rows", rows}}));
      files.commit();
      if (rows.size() == 1)
        out << fmt6(last) << "\n";
      else
        out << "bounds: thm=" << thm << " rows=" << rows.size() << " -> " << files.list() << "\n";
    } else if (*scr) {
      require_seed(common);
      ScreeningModel model{dist.spec(p), support, coef, noise_sd};
      for (Eigen::Index d : d_list) {
        if (d < static_cast<Eigen::Index>(support.size())) throw ArgumentError("--d values must be >= support size");
        if (d > p) throw ArgumentError("--d values must be <= p");
      }
      const auto report = screening_depth_experiment(model, n, reps, common.seed, common.threads);
      std::ostringstream csv;
      csv << "d,frequency\n";
      Json freq = Json::array();
      for (Eigen::Index d : d_list) {
        const double f = model.true_support.empty() ? 1.0 : frequency_at(report, d);
        csv << d << ',' << format_double(f) << '\n';
        freq.push_back({{"d", d}, {"frequency", f}});
      }
      add_report_files(files, common, report, Json{{"frequency", freq}});
      if (common.want_csv()) files.add("screen.csv", csv.str());
      files.commit();
      out << "screen: n=" << n << " p=" << p << " s=" << support.size();
      for (const auto& f : freq) out << " f(" << f["d"].get<Eigen::Index>() << ")=" << fmt6(f["frequency"].get<double>());
      out << " -> " << files.list() << "\n";
    } else if (*golden) {
      return validate_golden(baseline_dir, report_dir, out);
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIoFailure;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidArguments;
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidArguments;
  } catch (const DomainError& e) {
    err << "numerical error: " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const ResourceError& e) {
    err << "numerical error: " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const Json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidArguments;
  }
  return kOk;
}

inline int run(int argc, char** argv) { return run(std::vector<std::string>(argv, argv + argc)); }

}  // namespace hdgeom::cli
