#include "mvcal/montecarlo.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace mvcal {

TestKind test_kind_from_string(const std::string& s) {
  if (s == "es-d" || s == "es_d") return TestKind::kEsD;
  if (s == "es-gbt" || s == "es_gbt") return TestKind::kEsGbt;
  if (s == "ls-d" || s == "ls_d") return TestKind::kLsD;
  if (s == "ls-gbt" || s == "ls_gbt") return TestKind::kLsGbt;
  if (s == "avgrank") return TestKind::kAvgRank;
  if (s == "copulapit") return TestKind::kCopulaPit;
  if (s == "dm") return TestKind::kDm;
  throw ParseError("unknown test name: " + s);
}

std::string to_string(TestKind kind) {
  switch (kind) {
    case TestKind::kEsD: return "es-d";
    case TestKind::kEsGbt: return "es-gbt";
    case TestKind::kLsD: return "ls-d";
    case TestKind::kLsGbt: return "ls-gbt";
    case TestKind::kAvgRank: return "avgrank";
    case TestKind::kCopulaPit: return "copulapit";
    case TestKind::kDm: return "dm";
  }
  throw ParseError("unknown test kind");
}

std::string design_name(const DesignSpec& design) {
  if (const auto* s = std::get_if<StaticDesignSpec>(&design)) return "static_" + to_string(s->label);
  if (std::get_if<TSizeDesignSpec>(&design)) return "t_size";
  const auto& v = std::get<VarDesign>(design);
  std::string name = "var";
  if (v.a_fcst != v.a_true) name += "_amis";
  if (v.sigma_scale_fcst != 1.0) name += "_smis";
  if (v.heterosk_true && !v.heterosk_fcst) name += "_hmis";
  else if (v.heterosk_true) name += "_het";
  return name;
}

SeriesBundle evaluate_series(const EvalSeries& series, const std::vector<TestKind>& tests,
                             Eigen::Index n_draws, Rng& rng) {
  const Eigen::Index t = static_cast<Eigen::Index>(series.points.size());
  bool want_es = false, want_es_d = false, want_ls = false, want_ls_d = false;
  bool want_avg = false, want_cop = false, want_dm = false;
  for (TestKind k : tests) {
    switch (k) {
      case TestKind::kEsD: want_es = want_es_d = true; break;
      case TestKind::kEsGbt: want_es = true; break;
      case TestKind::kLsD: want_ls = want_ls_d = true; break;
      case TestKind::kLsGbt: want_ls = true; break;
      case TestKind::kAvgRank: want_avg = true; break;
      case TestKind::kCopulaPit: want_cop = true; break;
      case TestKind::kDm: want_dm = true; break;
    }
  }

  SeriesBundle bundle;
  auto pit = [&](TestKind k) -> VectorXd& {
    auto& p = bundle.pits[k];
    p.horizon = series.horizon;
    if (p.values.size() != t) p.values.resize(t);
    return p.values;
  };
  auto diff = [&](TestKind k) -> VectorXd& {
    auto& p = bundle.diffs[k];
    p.horizon = series.horizon;
    if (p.values.size() != t) p.values.resize(t);
    return p.values;
  };

  for (Eigen::Index i = 0; i < t; ++i) {
    const EvalPoint& pt = series.points[i];
    const ForecastRep rep = ForecastRep::from_spec(pt.forecast, n_draws, rng);
    if (want_es) {
      const EsStats es = es_stats(rep, pt.obs);
      pit(TestKind::kEsGbt)(i) = es.u;
      if (want_es_d) diff(TestKind::kEsD)(i) = es.d;
    }
    if (want_ls) {
      const LsStats ls = ls_stats(rep, pt.obs);
      pit(TestKind::kLsGbt)(i) = ls.u;
      if (want_ls_d) diff(TestKind::kLsD)(i) = ls.d;
    }
    if (want_avg) pit(TestKind::kAvgRank)(i) = u_avg_rank(rep, pt.obs);
    if (want_cop) pit(TestKind::kCopulaPit)(i) = u_copula_pit(rep, pt.obs);
    if (want_dm) pit(TestKind::kDm)(i) = u_dm_hat(rep, pt.obs);
  }
  // ES-GBT PITs were computed whenever ES-D was requested; drop unrequested
  // series so the bundle mirrors the request.
  auto requested = [&](TestKind k) {
    for (TestKind q : tests)
      if (q == k) return true;
    return false;
  };
  if (!requested(TestKind::kEsGbt)) bundle.pits.erase(TestKind::kEsGbt);
  if (!requested(TestKind::kLsGbt)) bundle.pits.erase(TestKind::kLsGbt);
  return bundle;
}

TestResult apply_test(const SeriesBundle& bundle, TestKind kind, const HacSpec& hac) {
  switch (kind) {
    case TestKind::kEsD:
    case TestKind::kLsD:
      return entropy_ttest(bundle.diffs.at(kind), hac);
    default:
      return knueppel_uniformity(bundle.pits.at(kind), hac);
  }
}

namespace {

EvalSeries simulate_design(const DesignSpec& design, Eigen::Index t, Rng& rng) {
  if (const auto* s = std::get_if<StaticDesignSpec>(&design))
    return simulate_static_case(build_static_design(s->label, s->d), t, rng);
  if (const auto* s = std::get_if<TSizeDesignSpec>(&design))
    return simulate_static_case(build_t_size_design(s->d, s->df), t, rng);
  VarDesign v = std::get<VarDesign>(design);
  v.T = t;
  return simulate_var_case(v, rng);
}

struct DesignShape {
  Eigen::Index d;
  int h;
};

DesignShape design_shape(const DesignSpec& design) {
  if (const auto* s = std::get_if<StaticDesignSpec>(&design)) return {s->d, 1};
  if (const auto* s = std::get_if<TSizeDesignSpec>(&design)) return {s->d, 1};
  const auto& v = std::get<VarDesign>(design);
  return {v.d, v.h};
}

}  // namespace

RejectionTable run_experiment(const ExperimentSpec& spec) {
  if (spec.replications < 1) throw Error("run_experiment: replications must be >= 1");
  if (spec.nominal_level <= 0.0 || spec.nominal_level >= 1.0)
    throw Error("run_experiment: nominal level must lie in (0,1)");
  if (spec.tests.empty()) throw Error("run_experiment: no tests requested");

  const Eigen::Index reps = spec.replications;
  const std::size_t n_tests = spec.tests.size();
  std::vector<std::uint8_t> reject(static_cast<std::size_t>(reps) * n_tests, 0);

  std::atomic<Eigen::Index> next{0};
  std::mutex err_mutex;
  std::exception_ptr first_error;

  auto worker = [&]() {
    for (;;) {
      const Eigen::Index r = next.fetch_add(1);
      if (r >= reps) return;
      try {
        Rng rng(replication_seed(spec.master_seed, static_cast<std::uint64_t>(r)));
        const EvalSeries series = simulate_design(spec.design, spec.T, rng);
        const SeriesBundle bundle = evaluate_series(series, spec.tests, spec.J, rng);
        for (std::size_t k = 0; k < n_tests; ++k) {
          const TestResult res = apply_test(bundle, spec.tests[k], spec.hac);
          reject[static_cast<std::size_t>(r) * n_tests + k] =
              (res.p_value < spec.nominal_level) ? 1 : 0;
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!first_error) first_error = std::current_exception();
        next.store(reps);  // stop all workers; a failed replication aborts the run
        return;
      }
    }
  };

  int n_threads = spec.threads;
  if (n_threads <= 0) n_threads = static_cast<int>(std::thread::hardware_concurrency());
  if (n_threads < 1) n_threads = 1;
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  const DesignShape shape = design_shape(spec.design);
  RejectionTable table;
  table.design = design_name(spec.design);
  table.T = spec.T;
  table.d = shape.d;
  table.h = shape.h;
  table.replications = reps;
  table.tests = spec.tests;
  table.rates.resize(n_tests);
  table.std_errors.resize(n_tests);
  for (std::size_t k = 0; k < n_tests; ++k) {
    // index-ordered reduction keeps output independent of the worker count
    double sum = 0.0;
    for (Eigen::Index r = 0; r < reps; ++r) sum += reject[static_cast<std::size_t>(r) * n_tests + k];
    const double p = sum / static_cast<double>(reps);
    table.rates[k] = p;
    table.std_errors[k] = std::sqrt(p * (1.0 - p) / static_cast<double>(reps));
  }
  return table;
}

}  // namespace mvcal
