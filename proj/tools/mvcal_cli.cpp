// Command-line front end: Monte Carlo simulation, evaluation of user data,
// and diagnostic plot data.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "mvcal/io.hpp"
#include "mvcal/smooth.hpp"

namespace fs = std::filesystem;
using namespace mvcal;

namespace {

constexpr int kExitRunFailure = 1;
constexpr int kExitBadInput = 2;

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON in ") + path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write file: " + path);
  out << content;
}

HacSpec parse_bandwidth(const std::string& bw) {
  if (bw == "auto") return HacSpec::automatic();
  try {
    const int l = std::stoi(bw);
    if (l < 0) throw ParseError("bandwidth: must be 'auto' or a nonnegative integer");
    return HacSpec::fixed(l);
  } catch (const std::invalid_argument&) {
    throw ParseError("bandwidth: must be 'auto' or a nonnegative integer");
  }
}

int cmd_simulate(const std::string& config_path, const std::string& out_prefix) {
  ExperimentSpec spec;
  try {
    spec = experiment_spec_from_json(read_json_file(config_path));
  } catch (const json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const ParseError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitBadInput;
  }
  try {
    const RejectionTable table = run_experiment(spec);
    write_text_file(out_prefix + ".csv", rejection_table_to_csv(table));
    write_text_file(out_prefix + ".json", rejection_table_to_json(table).dump(2) + "\n");
  } catch (const std::exception& e) {
    std::cerr << "run failed: " << e.what() << "\n";
    return kExitRunFailure;
  }
  return 0;
}

struct LoadedInput {
  std::vector<ForecastRep> forecasts;
  std::vector<VectorXd> observations;
  std::vector<double> dates;
};

LoadedInput load_eval_input(const std::string& obs_path, const std::string& fcst_path,
                            Eigen::Index j_draws, std::uint64_t seed) {
  LoadedInput input;
  const CsvTable obs = read_csv_file(obs_path);
  if (obs.columns.empty() || obs.columns[0] != "t")
    throw ParseError("observations csv: first column must be 't'");
  const Eigen::Index d = static_cast<Eigen::Index>(obs.columns.size()) - 1;
  if (d < 1) throw ParseError("observations csv: no y columns");
  for (Eigen::Index i = 0; i < obs.data.rows(); ++i) {
    input.dates.push_back(obs.data(i, 0));
    input.observations.push_back(obs.data.row(i).tail(d).transpose());
  }

  Rng rng(seed);
  if (fs::is_directory(fcst_path)) {
    // one JSON DistSpec per date, named <t>.json
    for (std::size_t i = 0; i < input.dates.size(); ++i) {
      const long t = static_cast<long>(input.dates[i]);
      const fs::path file = fs::path(fcst_path) / (std::to_string(t) + ".json");
      if (!fs::exists(file))
        throw ParseError("missing forecast file for date " + std::to_string(t) + ": " + file.string());
      DistSpec spec = dist_spec_from_json(read_json_file(file.string()));
      if (dimension(spec) != d) throw ParseError("forecast dimension mismatch at date " + std::to_string(t));
      input.forecasts.push_back(ForecastRep::from_spec(std::move(spec), j_draws, rng));
    }
  } else {
    // long CSV of draws: t, j, x1..xd
    const CsvTable draws = read_csv_file(fcst_path);
    if (draws.columns.size() != static_cast<std::size_t>(d) + 2 || draws.columns[0] != "t" ||
        draws.columns[1] != "j")
      throw ParseError("forecast draws csv: expected columns t,j,x1..x" + std::to_string(d));
    std::map<double, std::vector<Eigen::Index>> rows_by_date;
    for (Eigen::Index i = 0; i < draws.data.rows(); ++i) rows_by_date[draws.data(i, 0)].push_back(i);
    for (double t : input.dates) {
      const auto it = rows_by_date.find(t);
      if (it == rows_by_date.end())
        throw ParseError("no forecast draws for date " + std::to_string(t));
      MatrixXd m(static_cast<Eigen::Index>(it->second.size()), d);
      for (std::size_t r = 0; r < it->second.size(); ++r)
        m.row(static_cast<Eigen::Index>(r)) = draws.data.row(it->second[r]).tail(d);
      input.forecasts.push_back(ForecastRep::from_draws(std::move(m)));
    }
  }
  return input;
}

int cmd_evaluate(const std::string& obs_path, const std::string& fcst_path,
                 const std::string& test_name, int horizon, const std::string& bandwidth,
                 Eigen::Index j_draws, std::uint64_t seed, const std::string& out_prefix) {
  TestKind kind;
  HacSpec hac;
  LoadedInput input;
  try {
    kind = test_kind_from_string(test_name);
    hac = parse_bandwidth(bandwidth);
    input = load_eval_input(obs_path, fcst_path, j_draws, seed);
    if (input.observations.size() < 10)
      throw ParseError("need at least 10 evaluation dates, got " +
                       std::to_string(input.observations.size()));
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const DensityUnavailable& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitBadInput;
  }

  try {
    const Eigen::Index t = static_cast<Eigen::Index>(input.observations.size());
    const bool entropy = (kind == TestKind::kEsD || kind == TestKind::kLsD);
    VectorXd series(t);
    for (Eigen::Index i = 0; i < t; ++i) {
      const ForecastRep& f = input.forecasts[static_cast<std::size_t>(i)];
      const VectorXd& y = input.observations[static_cast<std::size_t>(i)];
      switch (kind) {
        case TestKind::kEsD: series(i) = d_es_hat(f, y); break;
        case TestKind::kEsGbt: series(i) = u_es_hat(f, y); break;
        case TestKind::kLsD: series(i) = d_ls_hat(f, y); break;
        case TestKind::kLsGbt: series(i) = u_ls_hat(f, y); break;
        case TestKind::kAvgRank: series(i) = u_avg_rank(f, y); break;
        case TestKind::kCopulaPit: series(i) = u_copula_pit(f, y); break;
        case TestKind::kDm: series(i) = u_dm_hat(f, y); break;
      }
    }

    TestResult result;
    if (entropy) {
      result = entropy_ttest(DiffSeries{series, horizon}, hac);
    } else {
      result = knueppel_uniformity(PitSeries{series, horizon}, hac);
    }
    write_text_file(out_prefix + ".json", test_result_to_json(result).dump(2) + "\n");

    MatrixXd series_out(t, 2);
    for (Eigen::Index i = 0; i < t; ++i) {
      series_out(i, 0) = input.dates[static_cast<std::size_t>(i)];
      series_out(i, 1) = series(i);
    }
    std::ostringstream csv;
    write_csv(csv, {"t", entropy ? "d_hat" : "u_hat"}, series_out);
    write_text_file(out_prefix + "_series.csv", csv.str());

    if (!entropy) {
      // 10-bin PIT histogram; expected count T/10 per bin under the null
      Eigen::VectorXd counts = Eigen::VectorXd::Zero(10);
      for (Eigen::Index i = 0; i < t; ++i) {
        int b = static_cast<int>(series(i) * 10.0);
        if (b > 9) b = 9;
        counts(b) += 1.0;
      }
      MatrixXd hist(10, 3);
      for (int b = 0; b < 10; ++b) {
        hist(b, 0) = b / 10.0;
        hist(b, 1) = (b + 1) / 10.0;
        hist(b, 2) = counts(b);
      }
      std::ostringstream hcsv;
      write_csv(hcsv, {"bin_lo", "bin_hi", "count"}, hist);
      write_text_file(out_prefix + "_hist.csv", hcsv.str());
    }
  } catch (const DensityUnavailable& e) {
    std::cerr << "input error: " << e.what()
              << " (sample-only forecasts support the energy-score tests: es-d, es-gbt)\n";
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << "evaluate failed: " << e.what() << "\n";
    return kExitRunFailure;
  }
  return 0;
}

void write_hist_svg(const std::string& path, const Eigen::VectorXd& counts) {
  const double w = 400, h = 300, pad = 30;
  const double maxc = std::max(1.0, counts.maxCoeff());
  std::ostringstream svg;
  svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << w << "' height='" << h << "'>\n";
  svg << "<line x1='" << pad << "' y1='" << h - pad << "' x2='" << w - pad << "' y2='" << h - pad
      << "' stroke='black'/>\n";
  svg << "<line x1='" << pad << "' y1='" << pad << "' x2='" << pad << "' y2='" << h - pad
      << "' stroke='black'/>\n";
  const double bw = (w - 2 * pad) / counts.size();
  for (Eigen::Index b = 0; b < counts.size(); ++b) {
    const double bh = (h - 2 * pad) * counts(b) / maxc;
    svg << "<rect x='" << pad + b * bw << "' y='" << h - pad - bh << "' width='" << bw * 0.9
        << "' height='" << bh << "' fill='steelblue'/>\n";
  }
  svg << "</svg>\n";
  write_text_file(path, svg.str());
}

void write_line_svg(const std::string& path, const MatrixXd& data) {
  const double w = 500, h = 300, pad = 30;
  const double xmin = data.col(0).minCoeff(), xmax = data.col(0).maxCoeff();
  double ymin = data.rightCols(data.cols() - 1).minCoeff();
  double ymax = data.rightCols(data.cols() - 1).maxCoeff();
  if (ymax <= ymin) ymax = ymin + 1.0;
  auto sx = [&](double x) { return pad + (w - 2 * pad) * (x - xmin) / std::max(1e-12, xmax - xmin); };
  auto sy = [&](double y) { return h - pad - (h - 2 * pad) * (y - ymin) / (ymax - ymin); };
  std::ostringstream svg;
  svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << w << "' height='" << h << "'>\n";
  const char* colors[] = {"gray", "steelblue"};
  for (Eigen::Index c = 1; c < data.cols(); ++c) {
    svg << "<polyline fill='none' stroke='" << colors[(c - 1) % 2] << "' points='";
    for (Eigen::Index i = 0; i < data.rows(); ++i)
      svg << sx(data(i, 0)) << "," << sy(data(i, c)) << " ";
    svg << "'/>\n";
  }
  svg << "</svg>\n";
  write_text_file(path, svg.str());
}

int cmd_plotdata(const std::string& series_path, const std::string& kind,
                 const std::string& out_prefix, bool svg) {
  CsvTable table;
  try {
    table = read_csv_file(series_path);
    if (table.columns.size() < 2) throw ParseError("series csv: expected t,value columns");
    if (kind != "pit_hist" && kind != "diff_timeseries")
      throw ParseError("unknown plot kind: " + kind);
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitBadInput;
  }
  try {
    const VectorXd t = table.data.col(0);
    const VectorXd v = table.data.col(1);
    if (kind == "pit_hist") {
      Eigen::VectorXd counts = Eigen::VectorXd::Zero(10);
      for (Eigen::Index i = 0; i < v.size(); ++i) {
        int b = static_cast<int>(v(i) * 10.0);
        if (b < 0) b = 0;
        if (b > 9) b = 9;
        counts(b) += 1.0;
      }
      MatrixXd hist(10, 3);
      for (int b = 0; b < 10; ++b) {
        hist(b, 0) = b / 10.0;
        hist(b, 1) = (b + 1) / 10.0;
        hist(b, 2) = counts(b);
      }
      std::ostringstream csv;
      write_csv(csv, {"bin_lo", "bin_hi", "count"}, hist);
      write_text_file(out_prefix + ".csv", csv.str());
      if (svg) write_hist_svg(out_prefix + ".svg", counts);
    } else {
      const VectorXd trend = loess_quadratic(t, v, 0.75);
      MatrixXd out(v.size(), 3);
      out.col(0) = t;
      out.col(1) = v;
      out.col(2) = trend;
      std::ostringstream csv;
      write_csv(csv, {"t", "d_hat", "trend"}, out);
      write_text_file(out_prefix + ".csv", csv.str());
      if (svg) write_line_svg(out_prefix + ".svg", out);
    }
  } catch (const std::exception& e) {
    std::cerr << "plotdata failed: " << e.what() << "\n";
    return kExitRunFailure;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Score-based calibration tests for multivariate forecast distributions"};
  app.require_subcommand(1);

  std::string config_path, out_prefix = "out";
  auto* sim = app.add_subcommand("simulate", "Run a Monte Carlo experiment from a JSON config");
  sim->add_option("--config", config_path, "Experiment config JSON")->required();
  sim->add_option("--out", out_prefix, "Output path prefix");

  std::string obs_path, fcst_path, test_name, bandwidth = "auto";
  int horizon = 1;
  Eigen::Index j_draws = 5000;
  std::uint64_t seed = 1;
  auto* ev = app.add_subcommand("evaluate", "Evaluate forecast-observation data");
  ev->add_option("--obs", obs_path, "Observations CSV (t,y1..yd)")->required();
  ev->add_option("--forecasts", fcst_path, "Directory of per-date JSON specs or draws CSV (t,j,x1..xd)")
      ->required();
  ev->add_option("--test", test_name, "es-d | es-gbt | ls-d | ls-gbt | avgrank | copulapit | dm")
      ->required();
  ev->add_option("--horizon", horizon, "Forecast horizon");
  ev->add_option("--bandwidth", bandwidth, "HAC bandwidth: auto or integer");
  ev->add_option("--j", j_draws, "Draws per date for parametric specs");
  ev->add_option("--seed", seed, "RNG seed");
  ev->add_option("--out", out_prefix, "Output path prefix");

  std::string series_path, plot_kind;
  bool svg = false;
  auto* pd = app.add_subcommand("plotdata", "Histogram / trend data from a series CSV");
  pd->add_option("--series", series_path, "Series CSV from evaluate")->required();
  pd->add_option("--kind", plot_kind, "pit_hist | diff_timeseries")->required();
  pd->add_option("--out", out_prefix, "Output path prefix");
  pd->add_flag("--svg", svg, "Also write a minimal SVG");

  CLI11_PARSE(app, argc, argv);

  if (sim->parsed()) return cmd_simulate(config_path, out_prefix);
  if (ev->parsed())
    return cmd_evaluate(obs_path, fcst_path, test_name, horizon, bandwidth, j_draws, seed,
                        out_prefix);
  return cmd_plotdata(series_path, plot_kind, out_prefix, svg);
}
