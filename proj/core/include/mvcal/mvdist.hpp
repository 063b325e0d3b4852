#pragma once

#include <Eigen/Dense>
#include <variant>
#include <vector>

#include "mvcal/errors.hpp"
#include "mvcal/rng.hpp"

namespace mvcal {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Symmetric positive definite covariance matrix.
class CovMatrix {
 public:
  explicit CovMatrix(MatrixXd m);

  Eigen::Index dim() const { return m_.rows(); }
  const MatrixXd& matrix() const { return m_; }
  const MatrixXd& chol() const { return chol_; }  // lower triangular
  double log_det() const { return log_det_; }

 private:
  MatrixXd m_;
  MatrixXd chol_;
  double log_det_;
};

/// Lower-triangular Cholesky factor of a symmetric PD matrix.
/// Throws NotPositiveDefinite when a pivot is <= 0.
MatrixXd cholesky(const MatrixXd& cov);

/// Unit-diagonal equicorrelation matrix with off-diagonal rho.
CovMatrix equicorrelation(Eigen::Index d, double rho);

struct Gaussian {
  VectorXd mean;
  CovMatrix cov;
};

/// Multivariate t with scale chosen so the covariance equals a target:
/// scale = target * (nu - 2) / nu.
struct RescaledT {
  VectorXd mean;
  CovMatrix scale;
  double df;

  static RescaledT from_target_cov(VectorXd mean, const MatrixXd& target_cov, double df);
};

struct GaussianMixture {
  std::vector<double> weights;  // simplex
  std::vector<Gaussian> components;
};

struct Empirical {
  MatrixXd sample;  // J x d
};

using DistSpec = std::variant<Gaussian, RescaledT, GaussianMixture, Empirical>;

Eigen::Index dimension(const DistSpec& spec);

/// Draws n IID rows from the distribution. Empirical resamples with
/// replacement. Bit-reproducible for a fixed seed and draw order.
MatrixXd sample(const DistSpec& spec, Eigen::Index n, Rng& rng);

/// Closed-form log density. Throws DensityUnavailable for Empirical.
double logpdf(const DistSpec& spec, const VectorXd& y);

/// Log density at each row of points (same value as logpdf row by row,
/// but with factorizations computed once).
VectorXd logpdf_batch(const DistSpec& spec, const MatrixXd& points);

/// Fraction of sample rows componentwise <= y.
double empirical_mv_cdf(const MatrixXd& sample, const VectorXd& y);

/// Mean vector of the distribution.
VectorXd dist_mean(const DistSpec& spec);

}  // namespace mvcal
