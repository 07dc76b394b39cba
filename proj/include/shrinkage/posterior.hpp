#pragma once

#include <utility>
#include <vector>

#include "shrinkage/log_space.hpp"
#include "shrinkage/prior_family.hpp"
#include "shrinkage/quadrature.hpp"
#include "shrinkage/rng.hpp"

// Posterior functionals of the shrinkage weight kappa = 1/(1 + lambda^2 tau^2)
// for a single observation x ~ N(theta, 1). Everything is a ratio of members
// of one kernel family
//   G(j,m; x,tau) = integral_0^inf (t tau^2)^j (1+t tau^2)^{-m} t^{-a-1} L(t)
//                   exp(-x^2 / (2 (1+t tau^2))) dt
// evaluated by log-space quadrature in v = log t.

namespace shrinkage {

struct PosteriorContext {
    PriorFamily prior;
    double tau = 1.0;
    QuadratureConfig quad;

    void check() const;
};

// G(j,m; x,tau) as a log-scaled positive value. Requires j >= 0 and j - m < a.
LogScaled kernel_integral(const PosteriorContext& ctx, double j, double m, double x);

// E[kappa^r | x, tau] for r in {1,2}; strictly inside (0,1).
double kappa_moment(const PosteriorContext& ctx, double x, int r);

// E[1-kappa | x, tau], the shrinkage factor multiplying x in the Bayes estimate.
double one_minus_kappa_mean(const PosteriorContext& ctx, double x);

// T_tau(x) = (1 - E[kappa|x,tau]) x.
double posterior_mean(const PosteriorContext& ctx, double x);

struct PosteriorVariance {
    double value;
    double identity_gap;  // |first identity - second identity|
};

// Var(theta | x): evaluates both law-of-iterated-variance identities (one via
// E[kappa^2], one via E[(1-kappa)^2]) and reports their absolute difference.
// Throws if the identities disagree beyond 1e-8 * (1 + value).
PosteriorVariance posterior_variance(const PosteriorContext& ctx, double x);

// Pr(kappa > eta | x, tau), eta in (0,1).
double kappa_tail_prob(const PosteriorContext& ctx, double x, double eta);

// Pr(kappa <= eta | x, tau), integrated over its own t-range rather than as
// 1 - kappa_tail_prob, so the pair cross-checks the quadrature.
double kappa_cdf(const PosteriorContext& ctx, double x, double eta);

// Inverse-CDF sampler for the kappa-posterior at one observation. The grid is
// adapted in the t-domain until each cell's mass is resolved to ~1e-10 of the
// total, so the CDF used for inversion is accurate to well below 1e-6.
class KappaSampler {
  public:
    KappaSampler(const PosteriorContext& ctx, double x);

    // (kappa, 1-kappa), both computed without cancellation.
    std::pair<double, double> draw_pair(RngStream& rng) const;
    double draw_kappa(RngStream& rng) const { return draw_pair(rng).first; }

    // theta | x drawn as N((1-kappa) x, 1-kappa) given a fresh kappa.
    double draw_theta(RngStream& rng) const;

  private:
    double x_;
    double two_log_tau_;
    std::vector<double> node_v_;     // cell boundaries, ascending
    std::vector<double> node_psi_;   // log unnormalized density at boundaries
    std::vector<double> cum_;        // cumulative normalized cell masses
};

std::vector<double> sample_kappa(const PosteriorContext& ctx, double x, RngStream& rng, int n_draws);
std::vector<double> sample_theta(const PosteriorContext& ctx, double x, RngStream& rng, int n_draws);

}  // namespace shrinkage
