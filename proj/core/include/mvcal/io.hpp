#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "mvcal/caltest.hpp"
#include "mvcal/montecarlo.hpp"

namespace mvcal {

using json = nlohmann::json;

/// Numbers in text output carry 17 significant digits (round-trip exact).
std::string format_double(double x);

json dist_spec_to_json(const DistSpec& spec);
DistSpec dist_spec_from_json(const json& j);

json test_result_to_json(const TestResult& r);

json experiment_spec_to_json(const ExperimentSpec& spec);
ExperimentSpec experiment_spec_from_json(const json& j);

json rejection_table_to_json(const RejectionTable& table);
std::string rejection_table_to_csv(const RejectionTable& table);

/// Reads a CSV of doubles with a header line; returns the matrix and
/// column names.
struct CsvTable {
  std::vector<std::string> columns;
  MatrixXd data;
};
CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::string& path);
void write_csv(std::ostream& out, const std::vector<std::string>& columns, const MatrixXd& data);

/// Loads an Empirical sample from CSV with columns x1..xd.
MatrixXd load_sample_csv(const std::string& path);

/// Loads margins from long-format CSV (date, series, value): one vector per
/// series, ordered by date within series.
std::vector<VectorXd> load_margins_long_csv(const std::string& path);

}  // namespace mvcal
