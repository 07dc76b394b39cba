#pragma once

#include <string>
#include <vector>

#include "shrinkage/slowly_varying.hpp"

namespace shrinkage {

// One member of the shrinkage-prior class: the local variance t = lambda^2
// has density K * t^{-a-1} * L(t) with a in (0,1) and L slowly varying.
struct PriorFamily {
    std::string name;
    double exponent_a = 0.5;
    double normalizer_K = 1.0;
    SlowlyVaryingSpec local_density;
    bool in_theorem_range = false;  // a in [1/2, 1)

    double log_L(double log_t) const { return local_density.log_evaluate_logt(log_t); }
};

// a = 1/2, L(t) = t/(1+t), K = 1/pi.
PriorFamily make_horseshoe();

// Shrinkage weight kappa ~ Beta(a_beta, b_beta); the lambda^2 density is
// t^{b-1} (1+t)^{-a-b} / B(a,b), i.e. exponent a_beta and
// L(t) = (t/(1+t))^{a_beta+b_beta}. Requires a_beta in (0,1).
PriorFamily make_tpbn(double a_beta, double b_beta);

// Families constructible by name: inverse_gamma(alpha,beta), half_t(nu),
// gdp(alpha), neg(b). Also accepts horseshoe() and tpbn(a,b) so the CLI can
// route every prior flag through one entry point.
PriorFamily make_named(const std::string& name, const std::vector<double>& params);

// "name" or "name:p1,p2" as accepted on the command line.
PriorFamily parse_prior_spec(const std::string& spec);

// Default-parameterized members exposed through `priors list`.
std::vector<PriorFamily> registry();

struct ValidationReport {
    double normalization_residual = 0.0;  // |K * integral - 1|
    bool normalization_ok = false;
    double max_slow_variation_gap = 0.0;  // max |L(2t)/L(t) - 1| at t in {1e6,1e8,1e10}
    bool slow_variation_ok = false;
    double max_L_on_grid = 0.0;
    bool upper_bound_ok = false;  // L <= M on the probe grid
    double min_L_tail = 0.0;      // min L over [t0, 1e12]
    bool lower_bound_ok = false;  // min >= c0
    bool monotone_ok = true;      // probed only when the flag is set
    bool exponent_ok = false;     // a strictly inside (0,1)

    bool all_ok() const {
        return normalization_ok && slow_variation_ok && upper_bound_ok && lower_bound_ok &&
               monotone_ok && exponent_ok;
    }
};

// Probes every class assumption and reports measured margins; never throws.
ValidationReport validate(const PriorFamily& prior);

}  // namespace shrinkage
