#pragma once

#include <Eigen/Dense>

namespace mvcal {

/// Local quadratic regression trend (tricube weights, no robustness
/// iterations). span is the fraction of points in each local window.
Eigen::VectorXd loess_quadratic(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                                double span = 0.75);

}  // namespace mvcal
