#pragma once

#include <variant>
#include <vector>

#include "mvcal/mvdist.hpp"

namespace mvcal {

/// Forecast-observation pair for one evaluation date.
struct EvalPoint {
  DistSpec forecast;
  VectorXd obs;
};

/// Aligned evaluation sample with forecast horizon h.
struct EvalSeries {
  std::vector<EvalPoint> points;
  int horizon = 1;
};

enum class StaticLabel { kH0, kH1, kH2, kH3, kH4 };

StaticLabel static_label_from_string(const std::string& s);
std::string to_string(StaticLabel label);

/// CCC-GARCH(1,1) truth process (per-series GARCH variances, constant
/// conditional correlation).
struct GarchTruth {
  double omega;
  double alpha;
  double beta;
  CovMatrix corr;
};

/// Static simulation design: constant forecast distribution, IID truth
/// (except the GARCH case, which is a dependent path).
struct StaticDesign {
  StaticLabel label;
  Eigen::Index d;
  DistSpec forecast;
  std::variant<DistSpec, GarchTruth> truth;
};

/// Truth per H-label; the forecast is always the H0 Gaussian
/// N(0, equicorrelation(d, 0.5)).
StaticDesign build_static_design(StaticLabel label, Eigen::Index d);

/// Correctly specified multivariate-t size design: forecast and truth are
/// both the rescaled t with the H0 covariance.
StaticDesign build_t_size_design(Eigen::Index d, double df = 8.0);

/// Two-state Markov chain for the residual variance factor.
struct MarkovChain2 {
  double low = 1.0;
  double high = 1.25;
  double p_stay = 0.7;

  /// Advances one step; state indexed 0 (low) / 1 (high).
  int step(int state, Rng& rng) const { return (rng.uniform() <= p_stay) ? state : 1 - state; }
  double value(int state) const { return state == 0 ? low : high; }
};

/// VAR(1) simulation design (size and power variants).
struct VarDesign {
  Eigen::Index d = 2;
  double a_true = 0.5;      // diagonal of the true A
  double a_fcst = 0.5;      // diagonal of the forecaster's A
  double sigma_scale_fcst = 1.0;  // multiplier on the forecast residual covariance
  bool heterosk_true = false;
  bool heterosk_fcst = false;
  int h = 1;
  Eigen::Index T = 200;
  Eigen::Index burn_in = 500;
  MarkovChain2 chain;
};

/// Gaussian h-step VAR predictive: N(A^h y, sum_{i<h} A^i Sigma (A^i)').
DistSpec var_h_step_forecast(const VectorXd& y_origin, const MatrixXd& a,
                             const MatrixXd& sigma_eff, int h);

/// Exact h-step predictive under the Markov-switching variance: a finite
/// Gaussian mixture over the 2^h variance-factor paths, with the origin
/// state known to the forecaster.
DistSpec markov_mixture_forecast(const VectorXd& y_origin, int state_origin,
                                 const MarkovChain2& chain, const MatrixXd& a,
                                 const MatrixXd& sigma, int h);

/// T x d path of the CCC-GARCH(1,1) process.
MatrixXd ccc_garch_simulate(Eigen::Index d, double omega, double alpha, double beta,
                            const CovMatrix& corr, Eigen::Index t, Eigen::Index burn_in,
                            Rng& rng);

EvalSeries simulate_static_case(const StaticDesign& design, Eigen::Index t, Rng& rng);

EvalSeries simulate_var_case(const VarDesign& design, Rng& rng);

}  // namespace mvcal
