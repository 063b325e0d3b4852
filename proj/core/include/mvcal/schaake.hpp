#pragma once

#include <vector>

#include "mvcal/mvdist.hpp"

namespace mvcal {

/// Monotone quantile curve on the dense grid tau_m = m / (M + 1).
struct QuantileCurve {
  VectorXd values;  // nondecreasing

  Eigen::Index grid_size() const { return values.size(); }
  double level(Eigen::Index m) const {
    return static_cast<double>(m + 1) / static_cast<double>(values.size() + 1);
  }
};

/// Sorts raw quantile-regression output into a monotone curve
/// (multiset-preserving rearrangement).
QuantileCurve rearrange_quantile_curve(const VectorXd& raw);

/// q(0.6915) - q(0.3085) by nearest-grid-level lookup; the levels are chosen
/// so a standard normal curve yields a spread of one. A flat curve returns 0.
double spread_measure(const QuantileCurve& curve);

/// Within-column ranks (1..T) of a historical T x d sample; ties broken by
/// first occurrence.
struct RankTemplate {
  Eigen::MatrixXi ranks;  // T x d, each column a permutation of 1..T

  static RankTemplate from_history(const MatrixXd& history);
};

/// Reorders the sorted margin draws so the output rank structure equals the
/// template's: the empirical-copula Schaake shuffle. Each output column is a
/// permutation of the corresponding input margin.
MatrixXd schaake_shuffle(const std::vector<VectorXd>& margins, const RankTemplate& tpl);

/// Baseline that pairs the margins in independent random order.
MatrixXd random_pairing(const std::vector<VectorXd>& margins, Rng& rng);

}  // namespace mvcal
