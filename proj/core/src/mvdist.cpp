#include "mvcal/mvdist.hpp"

#include <cmath>
#include <numbers>

#include "mvcal/special.hpp"

namespace mvcal {

namespace {

constexpr double kLog2Pi = 1.8378770664093454836;

// Plain lower-triangular Cholesky so the failure condition (pivot <= 0) is
// explicit rather than implementation-defined.
MatrixXd cholesky_impl(const MatrixXd& a) {
  const Eigen::Index d = a.rows();
  MatrixXd L = MatrixXd::Zero(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    double diag = a(j, j);
    for (Eigen::Index k = 0; k < j; ++k) diag -= L(j, k) * L(j, k);
    if (diag <= 0.0) throw NotPositiveDefinite("cholesky: pivot <= 0 at index " + std::to_string(j));
    L(j, j) = std::sqrt(diag);
    for (Eigen::Index i = j + 1; i < d; ++i) {
      double s = a(i, j);
      for (Eigen::Index k = 0; k < j; ++k) s -= L(i, k) * L(j, k);
      L(i, j) = s / L(j, j);
    }
  }
  return L;
}

double gaussian_logpdf_one(const Gaussian& g, const VectorXd& y) {
  const Eigen::Index d = g.mean.size();
  const VectorXd z = g.cov.chol().template triangularView<Eigen::Lower>().solve(y - g.mean);
  return -0.5 * (d * kLog2Pi + g.cov.log_det() + z.squaredNorm());
}

double rescaled_t_logpdf_one(const RescaledT& t, const VectorXd& y) {
  const double d = static_cast<double>(t.mean.size());
  const double nu = t.df;
  const VectorXd z = t.scale.chol().template triangularView<Eigen::Lower>().solve(y - t.mean);
  const double maha = z.squaredNorm();
  return lgamma_pos(0.5 * (nu + d)) - lgamma_pos(0.5 * nu) - 0.5 * d * std::log(nu * std::numbers::pi) -
         0.5 * t.scale.log_det() - 0.5 * (nu + d) * std::log1p(maha / nu);
}

}  // namespace

CovMatrix::CovMatrix(MatrixXd m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw Error("CovMatrix: not square");
  const double scale = std::max(1.0, m_.cwiseAbs().maxCoeff());
  if (((m_ - m_.transpose()).cwiseAbs().maxCoeff()) > 1e-12 * scale)
    throw Error("CovMatrix: not symmetric");
  chol_ = cholesky_impl(m_);
  log_det_ = 2.0 * chol_.diagonal().array().log().sum();
}

MatrixXd cholesky(const MatrixXd& cov) {
  const double scale = std::max(1.0, cov.cwiseAbs().maxCoeff());
  if (cov.rows() != cov.cols() || ((cov - cov.transpose()).cwiseAbs().maxCoeff()) > 1e-12 * scale)
    throw Error("cholesky: input not symmetric");
  return cholesky_impl(cov);
}

CovMatrix equicorrelation(Eigen::Index d, double rho) {
  if (d < 1) throw InvalidCorrelation("equicorrelation: d must be >= 1");
  MatrixXd m = MatrixXd::Constant(d, d, rho);
  m.diagonal().setOnes();
  try {
    return CovMatrix(std::move(m));
  } catch (const NotPositiveDefinite&) {
    throw InvalidCorrelation("equicorrelation: matrix not positive definite for rho=" + std::to_string(rho));
  }
}

RescaledT RescaledT::from_target_cov(VectorXd mean, const MatrixXd& target_cov, double df) {
  if (df <= 2.0) throw Error("RescaledT: df must exceed 2");
  return RescaledT{std::move(mean), CovMatrix(target_cov * ((df - 2.0) / df)), df};
}

Eigen::Index dimension(const DistSpec& spec) {
  return std::visit(
      [](const auto& s) -> Eigen::Index {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Gaussian>) return s.mean.size();
        else if constexpr (std::is_same_v<T, RescaledT>) return s.mean.size();
        else if constexpr (std::is_same_v<T, GaussianMixture>) return s.components.at(0).mean.size();
        else return s.sample.cols();
      },
      spec);
}

MatrixXd sample(const DistSpec& spec, Eigen::Index n, Rng& rng) {
  if (n < 1) throw Error("sample: n must be >= 1");
  return std::visit(
      [&](const auto& s) -> MatrixXd {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Gaussian>) {
          const Eigen::Index d = s.mean.size();
          MatrixXd out(n, d);
          VectorXd z(d);
          for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index k = 0; k < d; ++k) z(k) = rng.normal();
            out.row(i) = (s.mean + s.cov.chol().template triangularView<Eigen::Lower>() * z).transpose();
          }
          return out;
        } else if constexpr (std::is_same_v<T, RescaledT>) {
          const Eigen::Index d = s.mean.size();
          const int df = static_cast<int>(s.df);
          MatrixXd out(n, d);
          VectorXd z(d);
          for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index k = 0; k < d; ++k) z(k) = rng.normal();
            const double w = rng.chisq(df);
            const VectorXd lz = s.scale.chol().template triangularView<Eigen::Lower>() * z;
            out.row(i) = (s.mean + std::sqrt(s.df / w) * lz).transpose();
          }
          return out;
        } else if constexpr (std::is_same_v<T, GaussianMixture>) {
          const Eigen::Index d = s.components.at(0).mean.size();
          MatrixXd out(n, d);
          VectorXd z(d);
          for (Eigen::Index i = 0; i < n; ++i) {
            const double u = rng.uniform();
            double acc = 0.0;
            std::size_t pick = s.weights.size() - 1;
            for (std::size_t c = 0; c < s.weights.size(); ++c) {
              acc += s.weights[c];
              if (u <= acc) {
                pick = c;
                break;
              }
            }
            const Gaussian& g = s.components[pick];
            for (Eigen::Index k = 0; k < d; ++k) z(k) = rng.normal();
            out.row(i) = (g.mean + g.cov.chol().template triangularView<Eigen::Lower>() * z).transpose();
          }
          return out;
        } else {
          if (s.sample.rows() < 1) throw Error("sample: Empirical sample is empty");
          MatrixXd out(n, s.sample.cols());
          for (Eigen::Index i = 0; i < n; ++i)
            out.row(i) = s.sample.row(static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(s.sample.rows()))));
          return out;
        }
      },
      spec);
}

double logpdf(const DistSpec& spec, const VectorXd& y) {
  return std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Gaussian>) {
          return gaussian_logpdf_one(s, y);
        } else if constexpr (std::is_same_v<T, RescaledT>) {
          return rescaled_t_logpdf_one(s, y);
        } else if constexpr (std::is_same_v<T, GaussianMixture>) {
          // log-sum-exp over components
          double maxv = -std::numeric_limits<double>::infinity();
          std::vector<double> terms(s.weights.size());
          for (std::size_t c = 0; c < s.weights.size(); ++c) {
            terms[c] = std::log(s.weights[c]) + gaussian_logpdf_one(s.components[c], y);
            maxv = std::max(maxv, terms[c]);
          }
          double acc = 0.0;
          for (double t : terms) acc += std::exp(t - maxv);
          return maxv + std::log(acc);
        } else {
          throw DensityUnavailable("logpdf: no closed-form density for Empirical spec");
        }
      },
      spec);
}

VectorXd logpdf_batch(const DistSpec& spec, const MatrixXd& points) {
  return std::visit(
      [&](const auto& s) -> VectorXd {
        using T = std::decay_t<decltype(s)>;
        const Eigen::Index n = points.rows();
        if constexpr (std::is_same_v<T, Gaussian>) {
          const Eigen::Index d = s.mean.size();
          MatrixXd centered = points.transpose().colwise() - s.mean;  // d x n
          s.cov.chol().template triangularView<Eigen::Lower>().solveInPlace(centered);
          return (-0.5 * (centered.colwise().squaredNorm().array() + d * kLog2Pi + s.cov.log_det())).matrix();
        } else if constexpr (std::is_same_v<T, RescaledT>) {
          const double d = static_cast<double>(s.mean.size());
          const double nu = s.df;
          MatrixXd centered = points.transpose().colwise() - s.mean;
          s.scale.chol().template triangularView<Eigen::Lower>().solveInPlace(centered);
          const double cst = lgamma_pos(0.5 * (nu + d)) - lgamma_pos(0.5 * nu) -
                             0.5 * d * std::log(nu * std::numbers::pi) - 0.5 * s.scale.log_det();
          return (cst - 0.5 * (nu + d) * (centered.colwise().squaredNorm().array() / nu).log1p()).matrix();
        } else if constexpr (std::is_same_v<T, GaussianMixture>) {
          const std::size_t nc = s.weights.size();
          MatrixXd comp(n, nc);
          for (std::size_t c = 0; c < nc; ++c) {
            const Gaussian& g = s.components[c];
            const Eigen::Index d = g.mean.size();
            MatrixXd centered = points.transpose().colwise() - g.mean;
            g.cov.chol().template triangularView<Eigen::Lower>().solveInPlace(centered);
            comp.col(static_cast<Eigen::Index>(c)) =
                (std::log(s.weights[c]) -
                 0.5 * (centered.colwise().squaredNorm().array() + d * kLog2Pi + g.cov.log_det()))
                    .matrix();
          }
          VectorXd out(n);
          for (Eigen::Index i = 0; i < n; ++i) {
            const double m = comp.row(i).maxCoeff();
            out(i) = m + std::log((comp.row(i).array() - m).exp().sum());
          }
          return out;
        } else {
          throw DensityUnavailable("logpdf_batch: no closed-form density for Empirical spec");
        }
      },
      spec);
}

double empirical_mv_cdf(const MatrixXd& sample, const VectorXd& y) {
  if (sample.rows() < 1) throw Error("empirical_mv_cdf: empty sample");
  Eigen::Index count = 0;
  for (Eigen::Index i = 0; i < sample.rows(); ++i)
    if ((sample.row(i).transpose().array() <= y.array()).all()) ++count;
  return static_cast<double>(count) / static_cast<double>(sample.rows());
}

VectorXd dist_mean(const DistSpec& spec) {
  return std::visit(
      [](const auto& s) -> VectorXd {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Gaussian>) return s.mean;
        else if constexpr (std::is_same_v<T, RescaledT>) return s.mean;
        else if constexpr (std::is_same_v<T, GaussianMixture>) {
          VectorXd m = VectorXd::Zero(s.components.at(0).mean.size());
          for (std::size_t c = 0; c < s.weights.size(); ++c) m += s.weights[c] * s.components[c].mean;
          return m;
        } else {
          return s.sample.colwise().mean().transpose();
        }
      },
      spec);
}

}  // namespace mvcal
