#include "mvcal/dgp.hpp"

#include <cmath>

namespace mvcal {

StaticLabel static_label_from_string(const std::string& s) {
  if (s == "H0") return StaticLabel::kH0;
  if (s == "H1") return StaticLabel::kH1;
  if (s == "H2") return StaticLabel::kH2;
  if (s == "H3") return StaticLabel::kH3;
  if (s == "H4") return StaticLabel::kH4;
  throw UnknownLabel("unknown design label: " + s);
}

std::string to_string(StaticLabel label) {
  switch (label) {
    case StaticLabel::kH0: return "H0";
    case StaticLabel::kH1: return "H1";
    case StaticLabel::kH2: return "H2";
    case StaticLabel::kH3: return "H3";
    case StaticLabel::kH4: return "H4";
  }
  throw UnknownLabel("unknown design label");
}

StaticDesign build_static_design(StaticLabel label, Eigen::Index d) {
  if (d < 2) throw Error("build_static_design: d must be >= 2");
  CovMatrix sigma0 = equicorrelation(d, 0.5);
  DistSpec forecast = Gaussian{VectorXd::Zero(d), sigma0};
  switch (label) {
    case StaticLabel::kH0:
      return StaticDesign{label, d, forecast, DistSpec(Gaussian{VectorXd::Zero(d), sigma0})};
    case StaticLabel::kH1:
      // variances 1.1^2, correlations unchanged
      return StaticDesign{
          label, d, forecast,
          DistSpec(Gaussian{VectorXd::Zero(d), CovMatrix(1.21 * sigma0.matrix())})};
    case StaticLabel::kH2:
      return StaticDesign{label, d, forecast,
                          DistSpec(Gaussian{VectorXd::Zero(d), equicorrelation(d, 0.4)})};
    case StaticLabel::kH3:
      return StaticDesign{
          label, d, forecast,
          DistSpec(RescaledT::from_target_cov(VectorXd::Zero(d), sigma0.matrix(), 8.0))};
    case StaticLabel::kH4:
      // omega/(1 - alpha - beta) = 1, so the unconditional covariance is Sigma0
      return StaticDesign{label, d, forecast, GarchTruth{0.05, 0.1, 0.85, sigma0}};
  }
  throw UnknownLabel("build_static_design: unknown label");
}

StaticDesign build_t_size_design(Eigen::Index d, double df) {
  if (d < 2) throw Error("build_t_size_design: d must be >= 2");
  CovMatrix sigma0 = equicorrelation(d, 0.5);
  DistSpec t = RescaledT::from_target_cov(VectorXd::Zero(d), sigma0.matrix(), df);
  return StaticDesign{StaticLabel::kH0, d, t, t};
}

MatrixXd ccc_garch_simulate(Eigen::Index d, double omega, double alpha, double beta,
                            const CovMatrix& corr, Eigen::Index t, Eigen::Index burn_in,
                            Rng& rng) {
  if (alpha + beta >= 1.0) throw NonStationary("ccc_garch_simulate: alpha + beta >= 1");
  if (corr.dim() != d) throw LengthMismatch("ccc_garch_simulate: correlation dimension mismatch");
  const double uncond = omega / (1.0 - alpha - beta);
  VectorXd sig2 = VectorXd::Constant(d, uncond);
  MatrixXd out(t, d);
  VectorXd z(d), eta(d), y(d);
  for (Eigen::Index s = 0; s < burn_in + t; ++s) {
    for (Eigen::Index k = 0; k < d; ++k) z(k) = rng.normal();
    eta = corr.chol().triangularView<Eigen::Lower>() * z;
    y = sig2.cwiseSqrt().cwiseProduct(eta);
    if (s >= burn_in) out.row(s - burn_in) = y.transpose();
    sig2 = (omega + beta * sig2.array() + alpha * y.array().square()).matrix();
  }
  return out;
}

EvalSeries simulate_static_case(const StaticDesign& design, Eigen::Index t, Rng& rng) {
  if (t < 1) throw Error("simulate_static_case: T must be >= 1");
  EvalSeries series;
  series.horizon = 1;
  series.points.reserve(t);
  if (const DistSpec* truth = std::get_if<DistSpec>(&design.truth)) {
    const MatrixXd obs = sample(*truth, t, rng);
    for (Eigen::Index i = 0; i < t; ++i)
      series.points.push_back(EvalPoint{design.forecast, obs.row(i).transpose()});
  } else {
    const GarchTruth& g = std::get<GarchTruth>(design.truth);
    const MatrixXd obs =
        ccc_garch_simulate(design.d, g.omega, g.alpha, g.beta, g.corr, t, 500, rng);
    for (Eigen::Index i = 0; i < t; ++i)
      series.points.push_back(EvalPoint{design.forecast, obs.row(i).transpose()});
  }
  return series;
}

DistSpec var_h_step_forecast(const VectorXd& y_origin, const MatrixXd& a,
                             const MatrixXd& sigma_eff, int h) {
  if (h < 1) throw Error("var_h_step_forecast: h must be >= 1");
  const Eigen::Index d = y_origin.size();
  MatrixXd ah = MatrixXd::Identity(d, d);
  MatrixXd cov = MatrixXd::Zero(d, d);
  for (int i = 0; i < h; ++i) {
    cov += ah * sigma_eff * ah.transpose();
    ah = a * ah;
  }
  return Gaussian{ah * y_origin, CovMatrix(cov)};
}

DistSpec markov_mixture_forecast(const VectorXd& y_origin, int state_origin,
                                 const MarkovChain2& chain, const MatrixXd& a,
                                 const MatrixXd& sigma, int h) {
  if (h < 1) throw Error("markov_mixture_forecast: h must be >= 1");
  const Eigen::Index d = y_origin.size();
  MatrixXd ah = MatrixXd::Identity(d, d);
  std::vector<MatrixXd> a_pow(h);  // A^i Sigma (A^i)'
  for (int i = 0; i < h; ++i) {
    a_pow[i] = ah * sigma * ah.transpose();
    ah = a * ah;
  }
  const VectorXd mean = ah * y_origin;

  GaussianMixture mix;
  const int n_paths = 1 << h;
  mix.weights.reserve(n_paths);
  mix.components.reserve(n_paths);
  for (int mask = 0; mask < n_paths; ++mask) {
    // bit s of mask: gamma state at origin + 1 + s
    double weight = 1.0;
    int prev = state_origin;
    MatrixXd cov = MatrixXd::Zero(d, d);
    for (int s = 0; s < h; ++s) {
      const int st = (mask >> s) & 1;
      weight *= (st == prev) ? chain.p_stay : (1.0 - chain.p_stay);
      // error at origin + 1 + s enters Y_{origin+h} through A^{h-1-s}
      cov += chain.value(st) * a_pow[h - 1 - s];
      prev = st;
    }
    mix.weights.push_back(weight);
    mix.components.push_back(Gaussian{mean, CovMatrix(cov)});
  }
  return mix;
}

EvalSeries simulate_var_case(const VarDesign& design, Rng& rng) {
  if (design.a_true >= 1.0 || design.a_true <= -1.0)
    throw ExplosiveVar("simulate_var_case: |diagonal of A| must be < 1");
  if (design.heterosk_fcst && !design.heterosk_true)
    throw Error("simulate_var_case: heteroskedastic forecast requires heteroskedastic truth");
  const Eigen::Index d = design.d;
  const int h = design.h;
  const CovMatrix sigma = equicorrelation(d, 0.5);
  const MatrixXd a_true = design.a_true * MatrixXd::Identity(d, d);
  const MatrixXd a_fcst = design.a_fcst * MatrixXd::Identity(d, d);
  const MatrixXd sigma_fcst = design.sigma_scale_fcst * sigma.matrix();

  const Eigen::Index n = design.burn_in + design.T;
  MatrixXd path(n, d);
  std::vector<int> states(n, 0);
  VectorXd y = VectorXd::Zero(d);
  VectorXd z(d);
  int state = 0;
  for (Eigen::Index s = 0; s < n; ++s) {
    if (design.heterosk_true) state = design.chain.step(state, rng);
    states[s] = state;
    const double gamma = design.heterosk_true ? design.chain.value(state) : 1.0;
    for (Eigen::Index k = 0; k < d; ++k) z(k) = rng.normal();
    const VectorXd lz = sigma.chol().triangularView<Eigen::Lower>() * z;
    y = a_true * y + std::sqrt(gamma) * lz;
    path.row(s) = y.transpose();
  }

  EvalSeries series;
  series.horizon = h;
  series.points.reserve(design.T);
  for (Eigen::Index t = design.burn_in; t < n; ++t) {
    const Eigen::Index origin = t - h;
    const VectorXd y0 = path.row(origin).transpose();
    DistSpec fcst = design.heterosk_fcst
                        ? markov_mixture_forecast(y0, states[origin], design.chain, a_fcst,
                                                  sigma_fcst, h)
                        : var_h_step_forecast(y0, a_fcst, sigma_fcst, h);
    series.points.push_back(EvalPoint{std::move(fcst), path.row(t).transpose()});
  }
  return series;
}

}  // namespace mvcal
