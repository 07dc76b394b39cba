#include "shrinkage/special.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace shrinkage {

double log_gamma(double x) { return std::lgamma(x); }

double log_beta(double a, double b) {
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

double beta_function(double a, double b) { return std::exp(log_beta(a, b)); }

namespace {

// Series expansion of P(a,x), reliable for x < a + 1.
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double term = sum;
    for (int n = 0; n < 500; ++n) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * 1e-16) {
            return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
        }
    }
    throw std::runtime_error("gamma_p: series failed to converge");
}

// Continued fraction for Q(a,x) = 1 - P(a,x), reliable for x >= a + 1.
double gamma_q_cf(double a, double x) {
    const double tiny = std::numeric_limits<double>::min() / 1e-30;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        double an = -static_cast<double>(i) * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16) {
            return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
        }
    }
    throw std::runtime_error("gamma_p: continued fraction failed to converge");
}

}  // namespace

double gamma_p(double a, double x) {
    if (!(a > 0.0) || x < 0.0) throw std::invalid_argument("gamma_p: need a > 0, x >= 0");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_cf(a, x);
}

double log_lower_gamma(double a, double x) {
    if (x == 0.0) return -std::numeric_limits<double>::infinity();
    double p = gamma_p(a, x);
    if (p > 1e-290) return std::lgamma(a) + std::log(p);
    // Deep left tail: gamma(a,x) ~ x^a/a * e^{-x} * (1 + x/(a+1) + ...).
    double sum = 1.0 / a;
    double term = sum;
    double ap = a;
    for (int n = 0; n < 200; ++n) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (term < sum * 1e-17) break;
    }
    return a * std::log(x) - x + std::log(sum);
}

}  // namespace shrinkage
