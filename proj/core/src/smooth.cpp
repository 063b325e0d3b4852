#include "mvcal/smooth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mvcal {

Eigen::VectorXd loess_quadratic(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                                double span) {
  const Eigen::Index n = x.size();
  if (y.size() != n) throw std::invalid_argument("loess_quadratic: length mismatch");
  if (n < 3) return y;
  Eigen::Index q = static_cast<Eigen::Index>(std::ceil(span * static_cast<double>(n)));
  q = std::clamp<Eigen::Index>(q, 3, n);

  Eigen::VectorXd out(n);
  std::vector<double> dist(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) dist[static_cast<std::size_t>(j)] = std::fabs(x(j) - x(i));
    std::vector<double> sorted = dist;
    std::nth_element(sorted.begin(), sorted.begin() + (q - 1), sorted.end());
    const double hw = std::max(sorted[static_cast<std::size_t>(q - 1)], 1e-300);

    Eigen::Matrix3d xtx = Eigen::Matrix3d::Zero();
    Eigen::Vector3d xty = Eigen::Vector3d::Zero();
    for (Eigen::Index j = 0; j < n; ++j) {
      const double r = dist[static_cast<std::size_t>(j)] / hw;
      if (r >= 1.0) continue;
      const double tri = 1.0 - r * r * r;
      const double w = tri * tri * tri;
      const double dx = x(j) - x(i);
      const Eigen::Vector3d b(1.0, dx, dx * dx);
      xtx += w * b * b.transpose();
      xty += w * b * y(j);
    }
    const Eigen::Vector3d beta = xtx.ldlt().solve(xty);
    out(i) = beta(0);
  }
  return out;
}

}  // namespace mvcal
