#include "mvcal/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace mvcal {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

namespace {

json vector_to_json(const VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json matrix_to_json(const MatrixXd& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    out.push_back(std::move(row));
  }
  return out;
}

VectorXd vector_from_json(const json& j) {
  VectorXd v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  return v;
}

MatrixXd matrix_from_json(const json& j) {
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  if (rows == 0) throw ParseError("matrix: empty");
  const Eigen::Index cols = static_cast<Eigen::Index>(j[0].size());
  MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (static_cast<Eigen::Index>(j[static_cast<std::size_t>(i)].size()) != cols)
      throw ParseError("matrix: ragged rows");
    for (Eigen::Index k = 0; k < cols; ++k)
      m(i, k) = j[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)].get<double>();
  }
  return m;
}

json gaussian_to_json(const Gaussian& g) {
  return json{{"kind", "gaussian"}, {"mean", vector_to_json(g.mean)}, {"cov", matrix_to_json(g.cov.matrix())}};
}

Gaussian gaussian_from_json(const json& j) {
  return Gaussian{vector_from_json(j.at("mean")), CovMatrix(matrix_from_json(j.at("cov")))};
}

}  // namespace

json dist_spec_to_json(const DistSpec& spec) {
  return std::visit(
      [](const auto& s) -> json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Gaussian>) {
          return gaussian_to_json(s);
        } else if constexpr (std::is_same_v<T, RescaledT>) {
          return json{{"kind", "rescaled_t"},
                      {"mean", vector_to_json(s.mean)},
                      {"cov", matrix_to_json(s.scale.matrix() * (s.df / (s.df - 2.0)))},
                      {"df", s.df}};
        } else if constexpr (std::is_same_v<T, GaussianMixture>) {
          json comps = json::array();
          for (const auto& c : s.components) comps.push_back(gaussian_to_json(c));
          return json{{"kind", "mixture"}, {"weights", s.weights}, {"components", std::move(comps)}};
        } else {
          return json{{"kind", "empirical"}, {"sample", matrix_to_json(s.sample)}};
        }
      },
      spec);
}

DistSpec dist_spec_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "gaussian") return gaussian_from_json(j);
  if (kind == "rescaled_t")
    return RescaledT::from_target_cov(vector_from_json(j.at("mean")), matrix_from_json(j.at("cov")),
                                      j.at("df").get<double>());
  if (kind == "mixture") {
    GaussianMixture mix;
    mix.weights = j.at("weights").get<std::vector<double>>();
    double sum = 0.0;
    for (double w : mix.weights) sum += w;
    if (std::fabs(sum - 1.0) > 1e-12) throw ParseError("mixture: weights do not sum to 1");
    for (const auto& c : j.at("components")) mix.components.push_back(gaussian_from_json(c));
    if (mix.weights.size() != mix.components.size())
      throw ParseError("mixture: weights/components size mismatch");
    return mix;
  }
  if (kind == "empirical") return Empirical{matrix_from_json(j.at("sample"))};
  throw ParseError("unknown dist spec kind: " + kind);
}

json test_result_to_json(const TestResult& r) {
  return json{{"statistic", r.statistic}, {"p_value", r.p_value},
              {"dist", to_string(r.reference)}, {"df", r.df},
              {"bandwidth", r.hac_bandwidth},  {"n", r.n_obs}};
}

json experiment_spec_to_json(const ExperimentSpec& spec) {
  json design;
  if (const auto* s = std::get_if<StaticDesignSpec>(&spec.design)) {
    design = json{{"type", "static"}, {"label", to_string(s->label)}, {"d", s->d}};
  } else if (const auto* s = std::get_if<TSizeDesignSpec>(&spec.design)) {
    design = json{{"type", "t_size"}, {"d", s->d}, {"df", s->df}};
  } else {
    const auto& v = std::get<VarDesign>(spec.design);
    design = json{{"type", "var"},
                  {"d", v.d},
                  {"h", v.h},
                  {"a_true", v.a_true},
                  {"a_fcst", v.a_fcst},
                  {"sigma_scale_fcst", v.sigma_scale_fcst},
                  {"heterosk_true", v.heterosk_true},
                  {"heterosk_fcst", v.heterosk_fcst},
                  {"burn_in", v.burn_in}};
  }
  json tests = json::array();
  for (TestKind k : spec.tests) tests.push_back(to_string(k));
  json out{{"design", std::move(design)}, {"tests", std::move(tests)},
           {"T", spec.T},               {"J", spec.J},
           {"replications", spec.replications}, {"nominal_level", spec.nominal_level},
           {"master_seed", spec.master_seed},   {"threads", spec.threads}};
  if (spec.hac.bandwidth >= 0) out["bandwidth"] = spec.hac.bandwidth;
  else out["bandwidth"] = "auto";
  return out;
}

ExperimentSpec experiment_spec_from_json(const json& j) {
  ExperimentSpec spec;
  const json& design = j.at("design");
  const std::string type = design.at("type").get<std::string>();
  if (type == "static") {
    StaticDesignSpec s;
    s.label = static_label_from_string(design.at("label").get<std::string>());
    s.d = design.at("d").get<Eigen::Index>();
    spec.design = s;
  } else if (type == "t_size") {
    TSizeDesignSpec s;
    s.d = design.at("d").get<Eigen::Index>();
    if (design.contains("df")) s.df = design.at("df").get<double>();
    spec.design = s;
  } else if (type == "var") {
    VarDesign v;
    v.d = design.at("d").get<Eigen::Index>();
    v.h = design.value("h", 1);
    v.a_true = design.value("a_true", 0.5);
    v.a_fcst = design.value("a_fcst", 0.5);
    v.sigma_scale_fcst = design.value("sigma_scale_fcst", 1.0);
    v.heterosk_true = design.value("heterosk_true", false);
    v.heterosk_fcst = design.value("heterosk_fcst", false);
    v.burn_in = design.value("burn_in", Eigen::Index(500));
    spec.design = v;
  } else {
    throw ParseError("design.type: unknown value '" + type + "'");
  }
  for (const auto& t : j.at("tests")) spec.tests.push_back(test_kind_from_string(t.get<std::string>()));
  spec.T = j.at("T").get<Eigen::Index>();
  spec.J = j.value("J", Eigen::Index(1000));
  spec.replications = j.at("replications").get<Eigen::Index>();
  spec.nominal_level = j.value("nominal_level", 0.05);
  spec.master_seed = j.value("master_seed", std::uint64_t(1));
  spec.threads = j.value("threads", 1);
  if (j.contains("bandwidth") && j.at("bandwidth").is_number_integer())
    spec.hac = HacSpec::fixed(j.at("bandwidth").get<int>());
  else
    spec.hac = HacSpec::automatic();
  return spec;
}

json rejection_table_to_json(const RejectionTable& table) {
  json cells = json::object();
  for (std::size_t k = 0; k < table.tests.size(); ++k) {
    cells[to_string(table.tests[k])] =
        json{{"rate", table.rates[k]}, {"std_error", table.std_errors[k]}};
  }
  return json{{"design", table.design}, {"T", table.T},  {"d", table.d},
              {"h", table.h},           {"replications", table.replications},
              {"cells", std::move(cells)}};
}

std::string rejection_table_to_csv(const RejectionTable& table) {
  std::ostringstream out;
  out << "design,T,d,h";
  for (TestKind k : table.tests) out << "," << to_string(k);
  out << "\n";
  out << table.design << "," << table.T << "," << table.d << "," << table.h;
  for (double r : table.rates) out << "," << format_double(r);
  out << "\n";
  return out.str();
}

CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw ParseError("csv: empty file");
  {
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) table.columns.push_back(field);
  }
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string field;
    std::vector<double> row;
    while (std::getline(ss, field, ',')) {
      try {
        row.push_back(std::stod(field));
      } catch (const std::exception&) {
        throw ParseError("csv: non-numeric field '" + field + "'");
      }
    }
    if (row.size() != table.columns.size()) throw ParseError("csv: ragged row");
    rows.push_back(std::move(row));
  }
  table.data.resize(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(table.columns.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t k = 0; k < rows[i].size(); ++k)
      table.data(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = rows[i][k];
  return table;
}

CsvTable read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  return read_csv(in);
}

void write_csv(std::ostream& out, const std::vector<std::string>& columns, const MatrixXd& data) {
  for (std::size_t k = 0; k < columns.size(); ++k) out << (k ? "," : "") << columns[k];
  out << "\n";
  for (Eigen::Index i = 0; i < data.rows(); ++i) {
    for (Eigen::Index k = 0; k < data.cols(); ++k)
      out << (k ? "," : "") << format_double(data(i, k));
    out << "\n";
  }
}

MatrixXd load_sample_csv(const std::string& path) {
  const CsvTable table = read_csv_file(path);
  return table.data;
}

std::vector<VectorXd> load_margins_long_csv(const std::string& path) {
  const CsvTable table = read_csv_file(path);
  if (table.columns.size() != 3) throw ParseError("margins csv: expected columns date,series,value");
  // series keyed by their numeric id, dates kept in file order within series
  std::map<double, std::vector<double>> by_series;
  for (Eigen::Index i = 0; i < table.data.rows(); ++i)
    by_series[table.data(i, 1)].push_back(table.data(i, 2));
  std::vector<VectorXd> margins;
  margins.reserve(by_series.size());
  for (const auto& [id, vals] : by_series) {
    VectorXd v(static_cast<Eigen::Index>(vals.size()));
    for (std::size_t k = 0; k < vals.size(); ++k) v(static_cast<Eigen::Index>(k)) = vals[k];
    margins.push_back(std::move(v));
  }
  return margins;
}

}  // namespace mvcal
