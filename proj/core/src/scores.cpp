#include "mvcal/scores.hpp"

#include <cmath>

#include "mvcal/special.hpp"

namespace mvcal {

ForecastRep ForecastRep::from_spec(DistSpec spec, Eigen::Index n_draws, Rng& rng) {
  MatrixXd draws = sample(spec, n_draws, rng);
  return ForecastRep{std::move(spec), std::move(draws)};
}

ForecastRep ForecastRep::from_draws(MatrixXd draws) {
  return ForecastRep{std::nullopt, std::move(draws)};
}

MatrixXd pairwise_distances(const MatrixXd& a, const MatrixXd& b) {
  const VectorXd na = a.rowwise().squaredNorm();
  const VectorXd nb = b.rowwise().squaredNorm();
  MatrixXd d2 = (-2.0 * a * b.transpose());
  d2.colwise() += na;
  d2.rowwise() += nb.transpose();
  return d2.cwiseMax(0.0).cwiseSqrt();
}

double mean_distance_to_point(const MatrixXd& a, const VectorXd& y) {
  return (a.rowwise() - y.transpose()).rowwise().norm().mean();
}

double u_hat_generic(const GFunc& g, const ForecastRep& f, const VectorXd& y) {
  const Eigen::Index j = f.n_draws();
  if (j < 1) throw SampleTooSmall("u_hat_generic: no draws");
  const double gy = g(f, y);
  Eigen::Index count = 0;
  for (Eigen::Index i = 0; i < j; ++i)
    if (g(f, f.draws.row(i).transpose()) <= gy) ++count;
  return static_cast<double>(count) / static_cast<double>(j);
}

double d_hat_generic(const GFunc& g, const ForecastRep& f, const VectorXd& y) {
  const Eigen::Index j = f.n_draws();
  if (j < 1) throw SampleTooSmall("d_hat_generic: no draws");
  double acc = 0.0;
  for (Eigen::Index i = 0; i < j; ++i) acc += g(f, f.draws.row(i).transpose());
  return g(f, y) - acc / static_cast<double>(j);
}

LsStats ls_stats(const ForecastRep& f, const VectorXd& y) {
  if (!f.spec) throw DensityUnavailable("ls_stats: forecast has no closed-form spec");
  if (f.n_draws() < 1) throw SampleTooSmall("ls_stats: no draws");
  const VectorXd ld = logpdf_batch(*f.spec, f.draws);
  const double ly = logpdf(*f.spec, y);
  const double u =
      static_cast<double>((ld.array() >= ly).count()) / static_cast<double>(ld.size());
  return LsStats{u, -ly + ld.mean()};
}

double u_ls_hat(const ForecastRep& f, const VectorXd& y) { return ls_stats(f, y).u; }
double d_ls_hat(const ForecastRep& f, const VectorXd& y) { return ls_stats(f, y).d; }

EsStats es_stats(const ForecastRep& f, const VectorXd& y) {
  const Eigen::Index j0 = f.split();
  const Eigen::Index j1 = f.n_draws() - j0;
  if (j0 < 1 || j1 < 1) throw SampleTooSmall("es_stats: need at least two draws");
  const auto x = f.draws.topRows(j0);
  const auto xs = f.draws.bottomRows(j1);
  const MatrixXd dist = pairwise_distances(x, xs);
  const double b = mean_distance_to_point(x, y);
  const double u =
      static_cast<double>((dist.colwise().mean().array() <= b).count()) / static_cast<double>(j1);
  return EsStats{u, b - dist.mean()};
}

double u_es_hat(const ForecastRep& f, const VectorXd& y) { return es_stats(f, y).u; }
double d_es_hat(const ForecastRep& f, const VectorXd& y) { return es_stats(f, y).d; }

double u_es_tilde(const ForecastRep& f, const VectorXd& y) {
  const Eigen::Index j = f.n_draws();
  if (j < 2) throw SampleTooSmall("u_es_tilde: need at least two draws");
  const MatrixXd dist = pairwise_distances(f.draws, f.draws);
  const double b = mean_distance_to_point(f.draws, y);
  return static_cast<double>((dist.colwise().mean().array() <= b).count()) / static_cast<double>(j);
}

double d_es_tilde(const ForecastRep& f, const VectorXd& y) {
  const Eigen::Index j = f.n_draws();
  if (j < 2) throw SampleTooSmall("d_es_tilde: need at least two draws");
  const MatrixXd dist = pairwise_distances(f.draws, f.draws);
  return mean_distance_to_point(f.draws, y) - dist.mean();
}

double marginal_cdf(const DistSpec& spec, Eigen::Index i, double x) {
  return std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Gaussian>) {
          return norm_cdf((x - s.mean(i)) / std::sqrt(s.cov.matrix()(i, i)));
        } else if constexpr (std::is_same_v<T, RescaledT>) {
          return student_t_cdf((x - s.mean(i)) / std::sqrt(s.scale.matrix()(i, i)), s.df);
        } else if constexpr (std::is_same_v<T, GaussianMixture>) {
          double acc = 0.0;
          for (std::size_t c = 0; c < s.weights.size(); ++c) {
            const Gaussian& g = s.components[c];
            acc += s.weights[c] * norm_cdf((x - g.mean(i)) / std::sqrt(g.cov.matrix()(i, i)));
          }
          return acc;
        } else {
          // empirical marginal, strict-less ranks
          const auto col = s.sample.col(i);
          return static_cast<double>((col.array() < x).count()) /
                 static_cast<double>(col.size());
        }
      },
      spec);
}

namespace {

// (1/d) sum_i F^(i)(v_i), closed-form marginals
double avg_pit_closed(const DistSpec& spec, const VectorXd& v) {
  const Eigen::Index d = v.size();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < d; ++i) acc += marginal_cdf(spec, i, v(i));
  return acc / static_cast<double>(d);
}

// empirical marginal CDFs of the draws with strict-less ranks
double avg_pit_empirical(const MatrixXd& draws, const VectorXd& v) {
  const Eigen::Index d = v.size();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < d; ++i)
    acc += static_cast<double>((draws.col(i).array() < v(i)).count()) /
           static_cast<double>(draws.rows());
  return acc / static_cast<double>(d);
}

}  // namespace

double u_avg_rank(const ForecastRep& f, const VectorXd& y, bool use_closed_form) {
  const Eigen::Index j = f.n_draws();
  if (j < 1) throw SampleTooSmall("u_avg_rank: no draws");
  const bool closed = use_closed_form && f.spec && !std::holds_alternative<Empirical>(*f.spec);
  const double py = closed ? avg_pit_closed(*f.spec, y) : avg_pit_empirical(f.draws, y);
  Eigen::Index count = 0;
  for (Eigen::Index k = 0; k < j; ++k) {
    const VectorXd row = f.draws.row(k).transpose();
    const double pj = closed ? avg_pit_closed(*f.spec, row) : avg_pit_empirical(f.draws, row);
    if (pj < py) ++count;
  }
  return static_cast<double>(count) / static_cast<double>(j);
}

double u_copula_pit(const ForecastRep& f, const VectorXd& y) {
  if (f.n_draws() < 1) throw SampleTooSmall("u_copula_pit: no draws");
  const GFunc g = [](const ForecastRep& fr, const VectorXd& v) {
    return empirical_mv_cdf(fr.draws, v);
  };
  return u_hat_generic(g, f, y);
}

double g_dm_gaussian(const DistSpec& spec, const VectorXd& y) {
  const Gaussian* g = std::get_if<Gaussian>(&spec);
  if (!g) throw NotGaussian("g_dm_gaussian: forecast spec is not Gaussian");
  const Eigen::Index d = g->mean.size();
  const MatrixXd prec = g->cov.matrix().llt().solve(MatrixXd::Identity(d, d));
  const VectorXd s = prec * (y - g->mean);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < d; ++i) {
    if (prec(i, i) <= 0.0) throw Singular("g_dm_gaussian: degenerate conditional");
    const double z = s(i) / std::sqrt(prec(i, i));
    acc += z * z;
  }
  return acc;
}

double u_dm_hat(const ForecastRep& f, const VectorXd& y) {
  if (!f.spec) throw NotGaussian("u_dm_hat: forecast has no closed-form spec");
  const Gaussian* g = std::get_if<Gaussian>(&*f.spec);
  if (!g) throw NotGaussian("u_dm_hat: forecast spec is not Gaussian");
  const Eigen::Index d = g->mean.size();
  const MatrixXd prec = g->cov.matrix().llt().solve(MatrixXd::Identity(d, d));
  const VectorXd inv_sqrt_diag = prec.diagonal().cwiseSqrt().cwiseInverse();
  const MatrixXd scaled = ((f.draws.rowwise() - g->mean.transpose()) * prec) *
                          inv_sqrt_diag.asDiagonal();  // J x d of z-values
  const VectorXd gj = scaled.rowwise().squaredNorm();
  const double gy = g_dm_gaussian(*f.spec, y);
  return static_cast<double>((gj.array() <= gy).count()) / static_cast<double>(gj.size());
}

}  // namespace mvcal
