// Microbenchmarks for the hot paths of the Monte Carlo harness: score
// estimators, HAC inference, and DGP simulation.

#include <benchmark/benchmark.h>

#include "mvcal/caltest.hpp"
#include "mvcal/dgp.hpp"
#include "mvcal/mvdist.hpp"
#include "mvcal/schaake.hpp"
#include "mvcal/scores.hpp"

using namespace mvcal;

namespace {

ForecastRep gaussian_rep(Eigen::Index d, Eigen::Index j, Rng& rng) {
  const DistSpec spec = Gaussian{VectorXd::Zero(d), equicorrelation(d, 0.5)};
  return ForecastRep::from_spec(spec, j, rng);
}

void BM_es_stats(benchmark::State& state) {
  Rng rng(1);
  const Eigen::Index d = state.range(0), j = state.range(1);
  const ForecastRep f = gaussian_rep(d, j, rng);
  const VectorXd y = VectorXd::Constant(d, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(es_stats(f, y));
}
BENCHMARK(BM_es_stats)->Args({2, 1000})->Args({10, 1000});

void BM_ls_stats(benchmark::State& state) {
  Rng rng(2);
  const Eigen::Index d = state.range(0), j = state.range(1);
  const ForecastRep f = gaussian_rep(d, j, rng);
  const VectorXd y = VectorXd::Constant(d, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(ls_stats(f, y));
}
BENCHMARK(BM_ls_stats)->Args({2, 1000})->Args({10, 1000});

void BM_u_avg_rank(benchmark::State& state) {
  Rng rng(3);
  const ForecastRep f = gaussian_rep(state.range(0), 1000, rng);
  const VectorXd y = VectorXd::Constant(state.range(0), 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(u_avg_rank(f, y));
}
BENCHMARK(BM_u_avg_rank)->Arg(2)->Arg(10);

void BM_hac_lrv(benchmark::State& state) {
  Rng rng(4);
  const Eigen::Index t = state.range(0);
  MatrixXd x(t, 4);
  for (Eigen::Index i = 0; i < t; ++i)
    for (Eigen::Index k = 0; k < 4; ++k) x(i, k) = rng.normal();
  for (auto _ : state) benchmark::DoNotOptimize(hac_lrv(x, 3));
}
BENCHMARK(BM_hac_lrv)->Arg(200)->Arg(1000);

void BM_knueppel(benchmark::State& state) {
  Rng rng(5);
  VectorXd u(state.range(0));
  for (Eigen::Index i = 0; i < u.size(); ++i) u(i) = rng.uniform();
  const PitSeries series{u, 4};
  for (auto _ : state) benchmark::DoNotOptimize(knueppel_uniformity(series, HacSpec::automatic()));
}
BENCHMARK(BM_knueppel)->Arg(200)->Arg(1000);

void BM_ccc_garch(benchmark::State& state) {
  Rng rng(6);
  const CovMatrix corr = equicorrelation(state.range(0), 0.5);
  for (auto _ : state)
    benchmark::DoNotOptimize(ccc_garch_simulate(state.range(0), 0.05, 0.1, 0.85, corr, 200, 500, rng));
}
BENCHMARK(BM_ccc_garch)->Arg(2)->Arg(10);

void BM_simulate_var(benchmark::State& state) {
  Rng rng(7);
  VarDesign design;
  design.d = state.range(0);
  design.h = 4;
  design.heterosk_true = true;
  design.heterosk_fcst = true;
  design.T = 200;
  for (auto _ : state) benchmark::DoNotOptimize(simulate_var_case(design, rng));
}
BENCHMARK(BM_simulate_var)->Arg(2)->Arg(10);

void BM_schaake_shuffle(benchmark::State& state) {
  Rng rng(8);
  const Eigen::Index n = 250, d = state.range(0);
  MatrixXd history(n, d);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index k = 0; k < d; ++k) history(i, k) = rng.normal();
  const RankTemplate tpl = RankTemplate::from_history(history);
  std::vector<VectorXd> margins;
  for (Eigen::Index k = 0; k < d; ++k) {
    VectorXd m(n);
    for (Eigen::Index i = 0; i < n; ++i) m(i) = rng.normal();
    margins.push_back(m);
  }
  for (auto _ : state) benchmark::DoNotOptimize(schaake_shuffle(margins, tpl));
}
BENCHMARK(BM_schaake_shuffle)->Arg(5)->Arg(20);

}  // namespace

BENCHMARK_MAIN();
