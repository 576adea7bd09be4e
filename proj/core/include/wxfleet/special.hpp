#pragma once

namespace wxfleet::special {

/// Regularized incomplete beta I_x(a, b), continued fraction (modified Lentz).
double incomplete_beta(double a, double b, double x);

double normal_cdf(double z);
/// Two-sided normal quantile for confidence intervals, e.g. 0.975 -> 1.95996.
double normal_quantile(double p);

double student_t_cdf(double t, double df);
/// P(|T| >= |t|).
double student_t_two_sided_p(double t, double df);
/// Inverse of student_t_cdf, p in (0, 1).
double student_t_quantile(double p, double df);

double f_cdf(double f, double df1, double df2);
/// P(F >= f).
double f_upper_p(double f, double df1, double df2);

/// Upper tail of the chi-square distribution.
double chi_square_upper_p(double x, double df);

}  // namespace wxfleet::special
