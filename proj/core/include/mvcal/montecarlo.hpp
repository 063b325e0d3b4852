#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mvcal/caltest.hpp"
#include "mvcal/dgp.hpp"

namespace mvcal {

enum class TestKind { kEsD, kEsGbt, kLsD, kLsGbt, kAvgRank, kCopulaPit, kDm };

TestKind test_kind_from_string(const std::string& s);
std::string to_string(TestKind kind);

struct StaticDesignSpec {
  StaticLabel label = StaticLabel::kH0;
  Eigen::Index d = 2;
};

struct TSizeDesignSpec {
  Eigen::Index d = 2;
  double df = 8.0;
};

using DesignSpec = std::variant<StaticDesignSpec, TSizeDesignSpec, VarDesign>;

std::string design_name(const DesignSpec& design);

/// Monte Carlo experiment: (design x tests) grid with fixed T, J and seed.
struct ExperimentSpec {
  DesignSpec design;
  std::vector<TestKind> tests;
  Eigen::Index T = 200;
  Eigen::Index J = 1000;
  Eigen::Index replications = 5000;
  double nominal_level = 0.05;
  std::uint64_t master_seed = 1;
  HacSpec hac;          // default: auto(h)
  int threads = 1;      // 0 resolves to hardware concurrency
};

/// Rejection-rate grid: one row per (design, T, d, h), one column per test.
struct RejectionTable {
  std::string design;
  Eigen::Index T = 0;
  Eigen::Index d = 0;
  int h = 0;
  Eigen::Index replications = 0;
  std::vector<TestKind> tests;
  std::vector<double> rates;       // rejection rate per test
  std::vector<double> std_errors;  // binomial s.e. sqrt(p(1-p)/reps)
};

/// Per-date diagnostic series for one evaluated sample.
struct SeriesBundle {
  std::map<TestKind, PitSeries> pits;
  std::map<TestKind, DiffSeries> diffs;
};

/// Computes the per-date statistic series for the requested tests.
SeriesBundle evaluate_series(const EvalSeries& series, const std::vector<TestKind>& tests,
                             Eigen::Index n_draws, Rng& rng);

/// Applies the matching calibration test to a series bundle.
TestResult apply_test(const SeriesBundle& bundle, TestKind kind, const HacSpec& hac);

/// Runs the full experiment. Deterministic for a fixed master seed
/// regardless of the worker count; a failed replication aborts the run.
RejectionTable run_experiment(const ExperimentSpec& spec);

}  // namespace mvcal
