#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>

namespace shrinkage {

// A slowly varying function together with the certificates the bound
// formulas consume: a global upper bound M, and a pair (c0, t0) with
// L(t) >= c0 for all t >= t0.
//
// The evaluator works on log t and returns log L(t); every consumer in this
// library needs L at t values far outside double range, so the log form is
// the primary surface and plain evaluation is derived from it.
struct SlowlyVaryingSpec {
    std::function<double(double)> log_eval;  // log t -> log L(t)
    double upper_bound_M = 1.0;
    double lower_c0 = 0.0;
    double lower_t0 = 1.0;
    std::optional<double> limit_at_infinity;  // nullopt when unknown
    bool nondecreasing = false;

    double log_evaluate_logt(double log_t) const { return log_eval(log_t); }
    double evaluate(double t) const { return std::exp(log_eval(std::log(t))); }
};

}  // namespace shrinkage
