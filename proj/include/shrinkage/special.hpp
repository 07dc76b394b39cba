#pragma once

// Small set of special functions needed by the bound formulas: log-gamma,
// log-beta and the regularized lower incomplete gamma P(a,x).

namespace shrinkage {

double log_gamma(double x);
double log_beta(double a, double b);
double beta_function(double a, double b);

// Regularized lower incomplete gamma P(a,x) = gamma(a,x)/Gamma(a), a > 0, x >= 0.
double gamma_p(double a, double x);

// log of the unregularized lower incomplete gamma integral
// log( integral_0^x t^{a-1} e^{-t} dt ).
double log_lower_gamma(double a, double x);

}  // namespace shrinkage
