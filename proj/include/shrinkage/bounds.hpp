#pragma once

#include <optional>
#include <string>
#include <vector>

#include "shrinkage/log_space.hpp"
#include "shrinkage/posterior.hpp"
#include "shrinkage/prior_family.hpp"

// Closed-form bounds and rate expressions for the shrinkage-prior class,
// evaluated so they can be compared against quadrature truth. All bounds that
// contain an e^{x^2/2} factor are returned log-scaled and never exponentiated.

namespace shrinkage {

struct ConcentrationParams {
    double eta = 5.0 / 6.0;
    double delta = 0.2;

    double c() const { return 2.0 / (eta * (1.0 - delta)); }
    void check() const;
};

// E[1-kappa | x,tau] <= g1(a) e^{x^2/2} tau^{2a} with g1 = KM/(a(1-a)),
// the clean constant without the asymptotic (1+o(1)) factor.
LogScaled moment_bound(const PriorFamily& prior, double x, double tau);

// Pr(kappa > eta | x,tau) <= H(a,eta,delta) e^{-eta(1-delta)x^2/2} / (tau^{2a} Delta).
// Delta = xi * L(t*) with t* = (1/eta delta - 1)/tau^2 and xi the tail-integral
// ratio; both are quadrature-valued, so the pieces are precomputed per
// (prior, tau, params) and reused across x.
class ConcentrationBound {
  public:
    ConcentrationBound(const PriorFamily& prior, double tau, ConcentrationParams params,
                       QuadratureConfig quad = {});

    double log_bound(double x) const;
    double log_H() const { return log_H_; }
    double log_xi() const { return log_xi_; }
    double log_Delta() const { return log_Delta_; }

  private:
    double tau_, exponent_a_;
    ConcentrationParams params_;
    double log_H_, log_xi_, log_Delta_;
};

LogScaled concentration_bound(const PriorFamily& prior, double x, double tau,
                              ConcentrationParams params);

// |T_tau(x) - x| <= h1(x) + h2(x,tau) for all x and tau in (0,1):
//   h1(x) = C* / ( |x| * integral_0^{s x^2} e^{-u/2} u^{a-1/2} du ),
//   h2(x,tau) = |x| * concentration bound at (x,tau).
struct GapEnvelope {
    PriorFamily prior;
    ConcentrationParams params;
    double C_star;  // M * integral_0^inf e^{-u/2} u^{a+1/2} du / (c0 (1-eta)^{1+a})
    double s;       // 1/(1 + t0)

    double h1(double x) const;
    double h2(double x, double tau) const;
    double h(double x, double tau) const { return h1(x) + h2(x, tau); }
};

GapEnvelope gap_envelope(const PriorFamily& prior, ConcentrationParams params);

// Numeric sup of h over |x| in (thr, thr+50], thr = sqrt(rho log(1/tau^{2a})),
// on a 0.01-step grid; requires rho > params.c().
double tail_sup_h(const GapEnvelope& envelope, const PriorFamily& prior, double tau, double rho);

// zeta_tau = sqrt(2 log(1/tau^{2a})).
double zeta_threshold(double tau, double a);

// J(x,tau) <= 2KM e^{x^2/2} tau^{2a} (clean constant), a in [1/2,1).
LogScaled variance_crossterm_bound(const PriorFamily& prior, double x, double tau);

// I_k = integral (t tau^2)^{k-1/2} (1+t tau^2)^{-k} t^{-3/2} L(t)
//       exp(y t tau^2/(1+t tau^2)) dt, for a = 1/2 priors and k in {1/2,3/2,5/2}.
LogScaled ik_integral(const PriorFamily& prior, double k, double y, double tau,
                      QuadratureConfig quad = {});

// The four closed-form comparisons of the variance lower bound. Bounds whose
// tau-validity threshold is exceeded come back empty with their name listed
// in out_of_range; if every bound is out of range the call throws.
struct IkBounds {
    std::optional<double> lower_i52;  // valid for tau < 1/sqrt(2)
    std::optional<double> upper_i12;  // valid for tau < 1/2
    std::optional<double> upper_i32;  // valid for tau < 1/sqrt(2)
    std::optional<double> lower_i12;  // valid for tau < 1/2
    std::vector<std::string> out_of_range;
};

IkBounds ik_bounds(const PriorFamily& prior, double y, double tau);

// 2y [ I_{5/2}/I_{1/2} - (I_{3/2}/I_{1/2})^2 ]; a lower bound on the posterior
// variance at x = sqrt(2y).
double variance_lower_expression(const PriorFamily& prior, double y, double tau,
                                 QuadratureConfig quad = {});

struct RateFormulas {
    double minimax;     // 2 p ln(n/p)
    double thm31_rate;  // p log(1/tau^{2a}) + (n-p) tau^{2a} sqrt(log(1/tau^{2a}))
    double thm32_rate;  // p + (n-p) tau^{2a} sqrt(log(1/tau^{2a}))
    double thm35_rate;  // (n-p) tau sqrt(log(1/tau))
};

RateFormulas rate_formulas(long long n, long long p, double tau, double a);

}  // namespace shrinkage
