#pragma once

#include <functional>
#include <optional>

#include "mvcal/mvdist.hpp"

namespace mvcal {

/// Forecast distribution at one date: a materialized sample of draws,
/// plus the closed-form spec when available.
struct ForecastRep {
  std::optional<DistSpec> spec;
  MatrixXd draws;  // J x d

  Eigen::Index n_draws() const { return draws.rows(); }
  Eigen::Index dim() const { return draws.cols(); }
  /// Size of the first half under the middle-split rule.
  Eigen::Index split() const { return draws.rows() / 2; }

  static ForecastRep from_spec(DistSpec spec, Eigen::Index n_draws, Rng& rng);
  static ForecastRep from_draws(MatrixXd draws);
};

/// Sequence of per-date PIT values in [0,1], carrying the forecast horizon.
struct PitSeries {
  VectorXd values;
  int horizon = 1;
};

/// Sequence of per-date realized-minus-expected score differences.
struct DiffSeries {
  VectorXd values;
  int horizon = 1;
};

using GFunc = std::function<double(const ForecastRep&, const VectorXd&)>;

/// Empirical-CDF PIT of the realized g-value among the draw g-values:
/// (1/J) sum_j 1{ g(F, X_j) <= g(F, y) }.
double u_hat_generic(const GFunc& g, const ForecastRep& f, const VectorXd& y);

/// g(F, y) - (1/J) sum_j g(F, X_j).
double d_hat_generic(const GFunc& g, const ForecastRep& f, const VectorXd& y);

/// Log-score PIT: (1/J) sum_j 1{ log f(X_j) >= log f(y) }.
double u_ls_hat(const ForecastRep& f, const VectorXd& y);

/// Log-score entropy difference: -log f(y) + (1/J) sum_j log f(X_j).
double d_ls_hat(const ForecastRep& f, const VectorXd& y);

/// Energy-score PIT from a middle-split sample.
double u_es_hat(const ForecastRep& f, const VectorXd& y);

/// Energy-score entropy difference from a middle-split sample.
double d_es_hat(const ForecastRep& f, const VectorXd& y);

/// Single-sample variants.
double u_es_tilde(const ForecastRep& f, const VectorXd& y);
double d_es_tilde(const ForecastRep& f, const VectorXd& y);

/// Both log-score statistics from one pass over the draws.
struct LsStats {
  double u;
  double d;
};
LsStats ls_stats(const ForecastRep& f, const VectorXd& y);

/// Both energy-score statistics sharing one pairwise-distance matrix.
struct EsStats {
  double u;
  double d;
};
EsStats es_stats(const ForecastRep& f, const VectorXd& y);

/// Average-PIT prerank. Uses closed-form marginal CDFs when the spec is
/// available, empirical marginal CDFs of the draws (strict-less ranks)
/// otherwise.
double u_avg_rank(const ForecastRep& f, const VectorXd& y, bool use_closed_form = true);

/// Copula-PIT prerank: PIT of F(y) among F(X_j) with F the empirical
/// multivariate CDF of the draws.
double u_copula_pit(const ForecastRep& f, const VectorXd& y);

/// Dovern-Manner dimensionality reduction for Gaussian forecasts: sum of
/// squared standardized full-conditional residuals.
double g_dm_gaussian(const DistSpec& spec, const VectorXd& y);

/// PIT of g_dm_gaussian(y) among the draws' g-values.
double u_dm_hat(const ForecastRep& f, const VectorXd& y);

/// Marginal CDF of component i of a closed-form spec.
double marginal_cdf(const DistSpec& spec, Eigen::Index i, double x);

/// Mean Euclidean distance from each row of a to the point y.
double mean_distance_to_point(const MatrixXd& a, const VectorXd& y);

/// J0 x J1 matrix of Euclidean distances between rows of a and rows of b.
MatrixXd pairwise_distances(const MatrixXd& a, const MatrixXd& b);

}  // namespace mvcal
