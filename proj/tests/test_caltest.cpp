// HAC long-run variance and the calibration test statistics.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mvcal/caltest.hpp"
#include "mvcal/rng.hpp"

using namespace mvcal;

TEST_CASE("hac bandwidth resolution") {
  CHECK(HacSpec::automatic().resolve(1) == 0);
  CHECK(HacSpec::automatic().resolve(4) == 3);
  CHECK(HacSpec::fixed(7).resolve(4) == 7);
  CHECK(HacSpec::fixed(0).resolve(4) == 0);
}

TEST_CASE("hac_lrv at bandwidth zero is the sample covariance") {
  Rng rng(101);
  MatrixXd x(200, 3);
  for (Eigen::Index i = 0; i < x.size(); ++i) x(i / 3, i % 3) = rng.normal();
  const MatrixXd lrv = hac_lrv(x, 0);
  const MatrixXd centered = x.rowwise() - x.colwise().mean();
  const MatrixXd cov = (centered.transpose() * centered) / x.rows();
  CHECK((lrv - cov).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("hac_lrv of a constant series is zero") {
  // up to rounding in the demeaning step
  const MatrixXd c = MatrixXd::Constant(50, 2, 3.7);
  CHECK(hac_lrv(c, 5).cwiseAbs().maxCoeff() < 1e-25);
}

TEST_CASE("hac_lrv rejects too-large bandwidths") {
  CHECK_THROWS_AS(hac_lrv(MatrixXd::Zero(10, 1), 10), BandwidthTooLarge);
}

TEST_CASE("hac_lrv approaches the AR(1) long-run variance") {
  // x_t = phi x_{t-1} + e_t, LRV = sigma_e^2 / (1 - phi)^2
  Rng rng(103);
  const double phi = 0.5;
  const Eigen::Index t_len = 100000;
  MatrixXd x(t_len, 1);
  double prev = 0.0;
  for (Eigen::Index t = 0; t < t_len; ++t) {
    prev = phi * prev + rng.normal();
    x(t, 0) = prev;
  }
  const double lrv = hac_lrv(x, 50)(0, 0);
  const double truth = 1.0 / ((1.0 - phi) * (1.0 - phi));
  CHECK(std::fabs(lrv - truth) / truth < 0.10);
}

TEST_CASE("hac_lrv is symmetric PSD") {
  Rng rng(107);
  MatrixXd x(300, 4);
  double carry = 0.0;
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      carry = 0.6 * carry + rng.normal();
      x(i, j) = carry;
    }
  const MatrixXd lrv = hac_lrv(x, 8);
  CHECK((lrv - lrv.transpose()).cwiseAbs().maxCoeff() < 1e-12);
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(lrv);
  CHECK(es.eigenvalues().minCoeff() > -1e-10);
}

TEST_CASE("entropy_ttest closed cases") {
  const HacSpec hac = HacSpec::automatic();
  DiffSeries zero{VectorXd::Zero(50), 1};
  const TestResult rz = entropy_ttest(zero, hac);
  CHECK(rz.statistic == 0.0);
  CHECK(rz.p_value == 1.0);

  Rng rng(109);
  VectorXd v(100);
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = rng.normal();
  const TestResult rp = entropy_ttest(DiffSeries{v, 1}, hac);
  const TestResult rn = entropy_ttest(DiffSeries{-v, 1}, hac);
  CHECK(rp.p_value == doctest::Approx(rn.p_value).epsilon(1e-12));
  CHECK(rp.statistic == doctest::Approx(-rn.statistic).epsilon(1e-12));

  // invariance to positive rescaling
  const TestResult rs = entropy_ttest(DiffSeries{5.0 * v, 1}, hac);
  CHECK(rs.p_value == doctest::Approx(rp.p_value).epsilon(1e-10));

  CHECK(rp.reference == RefDist::kNormal);
  CHECK(rp.n_obs == 100);
  CHECK_THROWS_AS(entropy_ttest(DiffSeries{VectorXd::Zero(5), 1}, hac), Error);
}

TEST_CASE("knueppel_uniformity closed cases") {
  const HacSpec hac = HacSpec::fixed(0);

  // evenly spaced grid: sample moments match the uniform moments to O(1/T^2)
  const Eigen::Index t_len = 1000;
  VectorXd grid(t_len);
  for (Eigen::Index t = 0; t < t_len; ++t) grid(t) = (t + 0.5) / t_len;
  const TestResult rg = knueppel_uniformity(PitSeries{grid, 1}, hac);
  CHECK(rg.p_value > 0.99);
  CHECK(rg.reference == RefDist::kChiSquared);
  CHECK(rg.df == 4);
  CHECK(rg.statistic >= 0.0);

  // reflection u -> 1-u leaves the statistic unchanged
  Rng rng(113);
  VectorXd u(200);
  for (Eigen::Index i = 0; i < u.size(); ++i) u(i) = rng.uniform();
  const TestResult ra = knueppel_uniformity(PitSeries{u, 1}, hac);
  const TestResult rb = knueppel_uniformity(PitSeries{(1.0 - u.array()).matrix(), 1}, hac);
  CHECK(ra.statistic == doctest::Approx(rb.statistic).epsilon(1e-9));

  CHECK_THROWS_AS(knueppel_uniformity(PitSeries{VectorXd::Constant(20, 0.5), 1}, hac), Error);
  VectorXd bad = VectorXd::Constant(50, 0.5);
  bad(0) = 1.5;
  CHECK_THROWS_AS(knueppel_uniformity(PitSeries{bad, 1}, hac), Error);
}

TEST_CASE("auto bandwidth at h=1 reduces to the IID forms") {
  Rng rng(127);
  VectorXd u(150), d(150);
  for (Eigen::Index i = 0; i < 150; ++i) {
    u(i) = rng.uniform();
    d(i) = rng.normal();
  }
  const TestResult k_auto = knueppel_uniformity(PitSeries{u, 1}, HacSpec::automatic());
  const TestResult k_iid = knueppel_uniformity(PitSeries{u, 1}, HacSpec::fixed(0));
  CHECK(k_auto.statistic == doctest::Approx(k_iid.statistic).epsilon(1e-12));
  CHECK(k_auto.hac_bandwidth == 0);
  const TestResult t_auto = entropy_ttest(DiffSeries{d, 1}, HacSpec::automatic());
  const TestResult t_iid = entropy_ttest(DiffSeries{d, 1}, HacSpec::fixed(0));
  CHECK(t_auto.statistic == doctest::Approx(t_iid.statistic).epsilon(1e-12));
}

TEST_CASE("regression_unbiasedness closed cases") {
  const HacSpec hac = HacSpec::fixed(0);
  Rng rng(131);
  VectorXd expected(200);
  for (Eigen::Index i = 0; i < expected.size(); ++i) expected(i) = rng.normal();

  const TestResult exact = regression_unbiasedness(expected, expected, hac);
  CHECK(exact.statistic == 0.0);
  CHECK(exact.p_value == 1.0);

  CHECK_THROWS_AS(
      regression_unbiasedness(expected, VectorXd::Constant(200, 2.0), hac), Collinear);

  VectorXd realized(200);
  for (Eigen::Index i = 0; i < realized.size(); ++i)
    realized(i) = 2.0 * expected(i) + 0.1 * rng.normal();
  const TestResult slope2 = regression_unbiasedness(realized, expected, hac);
  CHECK(slope2.p_value < 0.01);
  CHECK(slope2.reference == RefDist::kChiSquared);
  CHECK(slope2.df == 2);
}

TEST_CASE("size control of both tests on IID nulls") {
  // nominal 5%, 5000 replications, T in {50, 200}
  Rng rng(137);
  for (const Eigen::Index t_len : {Eigen::Index(50), Eigen::Index(200)}) {
    int rej_t = 0, rej_k = 0;
    const int reps = 5000;
    VectorXd d(t_len), u(t_len);
    for (int r = 0; r < reps; ++r) {
      for (Eigen::Index i = 0; i < t_len; ++i) {
        d(i) = rng.normal();
        u(i) = rng.uniform();
      }
      if (entropy_ttest(DiffSeries{d, 1}, HacSpec::automatic()).p_value < 0.05) ++rej_t;
      if (knueppel_uniformity(PitSeries{u, 1}, HacSpec::automatic()).p_value < 0.05) ++rej_k;
    }
    const double rate_t = static_cast<double>(rej_t) / reps;
    const double rate_k = static_cast<double>(rej_k) / reps;
    CHECK(rate_t >= 0.03);
    CHECK(rate_t <= 0.08);
    CHECK(rate_k >= 0.03);
    CHECK(rate_k <= 0.08);
  }
}

TEST_CASE("tail helpers agree with special functions") {
  CHECK(dist_tail_normal_two_sided(0.0) == doctest::Approx(1.0));
  CHECK(dist_tail_normal_two_sided(1.959964) == doctest::Approx(0.05).epsilon(1e-6));
  CHECK(dist_tail_chi2_sf(4, 9.4877) == doctest::Approx(0.05).epsilon(2e-5));
  CHECK(to_string(RefDist::kNormal) == "normal");
  CHECK(to_string(RefDist::kChiSquared) == "chi_squared");
}
