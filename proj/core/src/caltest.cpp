#include "mvcal/caltest.hpp"

#include <cmath>

#include "mvcal/special.hpp"

namespace mvcal {

double dist_tail_normal_two_sided(double x) { return normal_two_sided(x); }
double dist_tail_chi2_sf(int df, double x) { return chi2_sf(df, x); }

std::string to_string(RefDist d) {
  return d == RefDist::kNormal ? "normal" : "chi_squared";
}

MatrixXd hac_lrv(const MatrixXd& series, int bandwidth) {
  const Eigen::Index t = series.rows();
  const Eigen::Index k = series.cols();
  if (bandwidth < 0) throw Error("hac_lrv: negative bandwidth");
  if (bandwidth >= t) throw BandwidthTooLarge("hac_lrv: bandwidth >= sample size");
  const MatrixXd x = series.rowwise() - series.colwise().mean();
  MatrixXd omega = (x.transpose() * x) / static_cast<double>(t);
  for (int l = 1; l <= bandwidth; ++l) {
    const double w = 1.0 - static_cast<double>(l) / (bandwidth + 1.0);
    const MatrixXd gamma =
        (x.bottomRows(t - l).transpose() * x.topRows(t - l)) / static_cast<double>(t);
    omega += w * (gamma + gamma.transpose());
  }
  return (omega + omega.transpose()) / 2.0;
}

TestResult entropy_ttest(const DiffSeries& d, const HacSpec& spec) {
  const Eigen::Index t = d.values.size();
  if (t < 10) throw Error("entropy_ttest: need at least 10 observations");
  const int bw = spec.resolve(d.horizon);
  const double lrv = hac_lrv(d.values, bw)(0, 0);
  const double mean = d.values.mean();
  TestResult r;
  r.reference = RefDist::kNormal;
  r.hac_bandwidth = bw;
  r.n_obs = t;
  if (lrv <= 0.0) {
    r.statistic = (mean == 0.0) ? 0.0 : std::numeric_limits<double>::infinity();
    r.p_value = (mean == 0.0) ? 1.0 : 0.0;
    return r;
  }
  r.statistic = mean / std::sqrt(lrv / static_cast<double>(t));
  r.p_value = normal_two_sided(r.statistic);
  return r;
}

TestResult knueppel_uniformity(const PitSeries& u, const HacSpec& spec) {
  const Eigen::Index t = u.values.size();
  if (t < 30) throw Error("knueppel_uniformity: need at least 30 observations");
  if ((u.values.array() < 0.0).any() || (u.values.array() > 1.0).any())
    throw Error("knueppel_uniformity: PIT values outside [0,1]");
  const int bw = spec.resolve(u.horizon);

  // E[(U - 1/2)^k] under uniformity: 0 for odd k, (1/2)^k / (k + 1) for even k.
  const auto null_moment = [](int k) {
    return (k % 2 != 0) ? 0.0 : std::pow(0.5, k) / (k + 1.0);
  };
  Eigen::Vector4d mu0;
  for (int i = 0; i < 4; ++i) mu0(i) = null_moment(i + 1);

  MatrixXd m(t, 4);
  m.col(0) = u.values.array() - 0.5;
  m.col(1) = m.col(0).array().square();
  m.col(2) = m.col(0).array().cube();
  m.col(3) = m.col(1).array().square();
  const Eigen::Vector4d dev = Eigen::Vector4d(m.colwise().mean()) - mu0;

  // Moment covariance imposed under the null: the contemporaneous block is
  // known in closed form under uniformity, and serial-correlation terms are
  // Bartlett-weighted autocovariances of the null-centered moment series.
  Eigen::Matrix4d omega;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) omega(i, j) = null_moment(i + j + 2) - mu0(i) * mu0(j);
  if (bw > 0) {
    if (bw >= t) throw BandwidthTooLarge("knueppel_uniformity: bandwidth >= sample size");
    const MatrixXd x = m.rowwise() - mu0.transpose();
    for (int l = 1; l <= bw; ++l) {
      const double w = 1.0 - static_cast<double>(l) / (bw + 1.0);
      const Eigen::Matrix4d gamma =
          (x.bottomRows(t - l).transpose() * x.topRows(t - l)) / static_cast<double>(t);
      omega += w * (gamma + gamma.transpose());
    }
  }
  // Eigenvalue floor against near-singular moment covariance at small T.
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> eig(omega);
  const double floor = 1e-12 * omega.trace();
  if (floor <= 0.0) throw SingularCovariance("knueppel_uniformity: zero moment covariance");
  const Eigen::Vector4d vals = eig.eigenvalues().cwiseMax(floor);
  const Eigen::Matrix4d omega_inv =
      eig.eigenvectors() * vals.cwiseInverse().asDiagonal() * eig.eigenvectors().transpose();

  TestResult r;
  r.reference = RefDist::kChiSquared;
  r.df = 4;
  r.hac_bandwidth = bw;
  r.n_obs = t;
  r.statistic = static_cast<double>(t) * dev.dot(omega_inv * dev);
  r.p_value = chi2_sf(4, r.statistic);
  return r;
}

TestResult regression_unbiasedness(const VectorXd& realized, const VectorXd& expected,
                                   const HacSpec& spec, int horizon) {
  const Eigen::Index t = realized.size();
  if (expected.size() != t) throw LengthMismatch("regression_unbiasedness: length mismatch");
  if (t < 10) throw Error("regression_unbiasedness: need at least 10 observations");
  const double mean_x = expected.mean();
  const double var_x = (expected.array() - mean_x).square().sum() / static_cast<double>(t);
  if (var_x < 1e-12 * mean_x * mean_x)
    throw Collinear("regression_unbiasedness: regressor has (near-)zero variance");

  const int bw = spec.resolve(horizon);
  MatrixXd x(t, 2);
  x.col(0).setOnes();
  x.col(1) = expected;
  const Eigen::Matrix2d q = (x.transpose() * x) / static_cast<double>(t);
  const Eigen::Vector2d beta = (x.transpose() * x).ldlt().solve(x.transpose() * realized);
  const VectorXd resid = realized - x * beta;
  const MatrixXd scores = x.array().colwise() * resid.array();
  const Eigen::Vector2d dev = beta - Eigen::Vector2d(0.0, 1.0);

  TestResult r;
  r.reference = RefDist::kChiSquared;
  r.df = 2;
  r.hac_bandwidth = bw;
  r.n_obs = t;
  if (resid.cwiseAbs().maxCoeff() < 1e-12 && dev.cwiseAbs().maxCoeff() < 1e-10) {
    r.statistic = 0.0;
    r.p_value = 1.0;
    return r;
  }
  const MatrixXd s = hac_lrv(scores, bw);
  const Eigen::Matrix2d qinv = q.inverse();
  const Eigen::Matrix2d v = qinv * s * qinv / static_cast<double>(t);
  r.statistic = dev.dot(v.ldlt().solve(dev));
  r.p_value = chi2_sf(2, r.statistic);
  return r;
}

}  // namespace mvcal
