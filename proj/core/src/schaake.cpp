#include "mvcal/schaake.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mvcal {

QuantileCurve rearrange_quantile_curve(const VectorXd& raw) {
  if (raw.size() < 1) throw Error("rearrange_quantile_curve: empty input");
  if (!raw.allFinite()) throw Error("rearrange_quantile_curve: non-finite values");
  QuantileCurve curve{raw};
  std::sort(curve.values.data(), curve.values.data() + curve.values.size());
  return curve;
}

double spread_measure(const QuantileCurve& curve) {
  const Eigen::Index m = curve.grid_size();
  // nearest grid level to the requested quantile
  auto lookup = [&](double tau) {
    const double pos = tau * static_cast<double>(m + 1) - 1.0;
    Eigen::Index idx = static_cast<Eigen::Index>(std::llround(pos));
    idx = std::clamp<Eigen::Index>(idx, 0, m - 1);
    return curve.values(idx);
  };
  const double upper = 0.6915, lower = 0.3085;
  if (curve.level(0) > lower || curve.level(m - 1) < upper)
    throw Error("spread_measure: grid does not bracket the spread levels");
  const double s = lookup(upper) - lookup(lower);
  return s > 0.0 ? s : 0.0;
}

RankTemplate RankTemplate::from_history(const MatrixXd& history) {
  const Eigen::Index t = history.rows();
  const Eigen::Index d = history.cols();
  RankTemplate tpl;
  tpl.ranks.resize(t, d);
  std::vector<Eigen::Index> order(t);
  for (Eigen::Index k = 0; k < d; ++k) {
    std::iota(order.begin(), order.end(), 0);
    // stable sort: ties keep first-occurrence order
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
      return history(a, k) < history(b, k);
    });
    for (Eigen::Index r = 0; r < t; ++r)
      tpl.ranks(order[static_cast<std::size_t>(r)], k) = static_cast<int>(r + 1);
  }
  return tpl;
}

MatrixXd schaake_shuffle(const std::vector<VectorXd>& margins, const RankTemplate& tpl) {
  const Eigen::Index d = static_cast<Eigen::Index>(margins.size());
  if (d < 1) throw LengthMismatch("schaake_shuffle: no margins");
  const Eigen::Index n = margins[0].size();
  if (tpl.ranks.rows() != n || tpl.ranks.cols() != d)
    throw LengthMismatch("schaake_shuffle: template shape does not match margins");
  MatrixXd out(n, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    if (margins[static_cast<std::size_t>(k)].size() != n)
      throw LengthMismatch("schaake_shuffle: margin lengths differ");
    VectorXd sorted = margins[static_cast<std::size_t>(k)];
    std::sort(sorted.data(), sorted.data() + n);
    for (Eigen::Index r = 0; r < n; ++r) out(r, k) = sorted(tpl.ranks(r, k) - 1);
  }
  return out;
}

MatrixXd random_pairing(const std::vector<VectorXd>& margins, Rng& rng) {
  const Eigen::Index d = static_cast<Eigen::Index>(margins.size());
  if (d < 1) throw LengthMismatch("random_pairing: no margins");
  const Eigen::Index n = margins[0].size();
  MatrixXd out(n, d);
  std::vector<Eigen::Index> perm(n);
  for (Eigen::Index k = 0; k < d; ++k) {
    if (margins[static_cast<std::size_t>(k)].size() != n)
      throw LengthMismatch("random_pairing: margin lengths differ");
    std::iota(perm.begin(), perm.end(), 0);
    // Fisher-Yates with the project RNG for reproducibility
    for (Eigen::Index i = n - 1; i > 0; --i) {
      const Eigen::Index j = static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(i + 1)));
      std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
    }
    for (Eigen::Index r = 0; r < n; ++r)
      out(r, k) = margins[static_cast<std::size_t>(k)](perm[static_cast<std::size_t>(r)]);
  }
  return out;
}

}  // namespace mvcal
