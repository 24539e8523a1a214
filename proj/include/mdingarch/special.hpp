#pragma once

namespace mdingarch {

// Regularized lower incomplete gamma P(a, x).
double gamma_p(double a, double x);

// Chi-square cdf with k degrees of freedom.
double chi_square_cdf(double x, int k);

// Standard normal cdf.
double normal_cdf(double z);

}  // namespace mdingarch
