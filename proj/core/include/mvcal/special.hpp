#pragma once

namespace mvcal {

/// Standard normal CDF.
double norm_cdf(double x);

/// Standard normal quantile function (Wichura's AS241, double precision).
double norm_quantile(double p);

/// Two-sided standard normal tail probability, P(|Z| >= |x|).
double normal_two_sided(double x);

/// Chi-squared survival function P(X > x) for integer df >= 1.
double chi2_sf(int df, double x);

/// Regularized incomplete beta function I_x(a, b).
double incbeta(double a, double b, double x);

/// CDF of Student's t with nu degrees of freedom.
double student_t_cdf(double x, double nu);

/// log Gamma(x), x > 0.
double lgamma_pos(double x);

}  // namespace mvcal
