#pragma once

#include <string>

#include "mvcal/scores.hpp"

namespace mvcal {

enum class RefDist { kNormal, kChiSquared };

struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;
  RefDist reference = RefDist::kNormal;
  int df = 0;  // for chi-squared references
  int hac_bandwidth = 0;
  Eigen::Index n_obs = 0;
};

/// Bartlett-kernel HAC specification. Auto bandwidth resolves to
/// max(h - 1, 0) for forecast horizon h.
struct HacSpec {
  int bandwidth = -1;  // negative means auto(h)

  int resolve(int horizon) const {
    if (bandwidth >= 0) return bandwidth;
    return horizon > 1 ? horizon - 1 : 0;
  }
  static HacSpec automatic() { return HacSpec{-1}; }
  static HacSpec fixed(int l) { return HacSpec{l}; }
};

/// Bartlett long-run variance of a T x k series (demeaned internally):
/// Omega = Gamma_0 + sum_{l=1..L} (1 - l/(L+1)) (Gamma_l + Gamma_l').
MatrixXd hac_lrv(const MatrixXd& series, int bandwidth);

/// HAC t-test of E[D] = 0 against a standard normal reference.
TestResult entropy_ttest(const DiffSeries& d, const HacSpec& spec);

/// Knueppel-style moment test of standard uniformity: joint Wald test of the
/// first four moments of u - 1/2 against (0, 1/12, 0, 1/80), chi-squared(4).
TestResult knueppel_uniformity(const PitSeries& u, const HacSpec& spec);

/// OLS of realized on (1, expected); HAC Wald test of (intercept, slope) =
/// (0, 1), chi-squared(2).
TestResult regression_unbiasedness(const VectorXd& realized, const VectorXd& expected,
                                   const HacSpec& spec, int horizon = 1);

/// Tail probabilities used for p-values.
double dist_tail_normal_two_sided(double x);
double dist_tail_chi2_sf(int df, double x);

std::string to_string(RefDist d);

}  // namespace mvcal
