#pragma once

#include <cmath>
#include <limits>

// Log-magnitude arithmetic. Every posterior functional in this library is a
// ratio of strictly positive integrals whose magnitudes span e^{+-800}, so
// integrals are carried as log-values and only ratios are exponentiated.

namespace shrinkage {

// A strictly positive quantity stored as its natural logarithm.
struct LogScaled {
    double log_value = -std::numeric_limits<double>::infinity();

    static LogScaled from_log(double lv) { return LogScaled{lv}; }
    static LogScaled from_value(double v) { return LogScaled{std::log(v)}; }
    static LogScaled zero() { return LogScaled{-std::numeric_limits<double>::infinity()}; }

    double value() const { return std::exp(log_value); }
    bool is_zero() const { return std::isinf(log_value) && log_value < 0; }

    friend LogScaled operator*(LogScaled a, LogScaled b) { return {a.log_value + b.log_value}; }
    friend LogScaled operator/(LogScaled a, LogScaled b) { return {a.log_value - b.log_value}; }
    friend bool operator<(LogScaled a, LogScaled b) { return a.log_value < b.log_value; }
    friend bool operator<=(LogScaled a, LogScaled b) { return a.log_value <= b.log_value; }
};

// log(e^a + e^b) without overflow.
inline double log_add(double a, double b) {
    if (std::isinf(a) && a < 0) return b;
    if (std::isinf(b) && b < 0) return a;
    double hi = a, lo = b;
    if (hi < lo) { hi = b; lo = a; }
    double d = lo - hi;
    if (d < -745.0) return hi;
    return hi + std::log1p(std::exp(d));
}

// log(e^a - e^b), requires a >= b.
inline double log_sub(double a, double b) {
    if (std::isinf(b) && b < 0) return a;
    if (a == b) return -std::numeric_limits<double>::infinity();
    return a + std::log1p(-std::exp(b - a));
}

// log(1 + e^x): softplus, exact in both tails.
inline double log1p_exp(double x) {
    if (x > 0) return x + std::log1p(std::exp(-x));
    return std::log1p(std::exp(x));
}

// 1/(1 + e^x) computed without overflow.
inline double logistic_neg(double x) {
    if (x > 0) {
        double e = std::exp(-x);
        return e / (1.0 + e);
    }
    return 1.0 / (1.0 + std::exp(x));
}

}  // namespace shrinkage
