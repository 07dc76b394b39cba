#include "shrinkage/bounds.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "shrinkage/quadrature.hpp"
#include "shrinkage/special.hpp"

namespace shrinkage {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_tau_01(double tau, const char* who) {
    if (!(tau > 0.0) || !(tau < 1.0))
        throw std::out_of_range(std::string(who) + ": tau must lie in (0,1)");
}

// The clean-constant bounds evaluate at tau = 1 as well (tau^{2a} = 1).
void require_tau_01_closed(double tau, const char* who) {
    if (!(tau > 0.0) || !(tau <= 1.0))
        throw std::out_of_range(std::string(who) + ": tau must lie in (0,1]");
}

}  // namespace

void ConcentrationParams::check() const {
    if (!(eta > 0.0) || !(eta < 1.0) || !(delta > 0.0) || !(delta < 1.0))
        throw std::invalid_argument("ConcentrationParams: eta and delta must lie strictly in (0,1)");
}

LogScaled moment_bound(const PriorFamily& prior, double x, double tau) {
    const double a = prior.exponent_a;
    if (!(a > 0.0) || !(a < 1.0)) throw std::out_of_range("moment_bound: requires a in (0,1)");
    require_tau_01_closed(tau, "moment_bound");
    double log_g1 = std::log(prior.normalizer_K * prior.local_density.upper_bound_M) -
                    std::log(a * (1.0 - a));
    return LogScaled::from_log(log_g1 + 0.5 * x * x + 2.0 * a * std::log(tau));
}

ConcentrationBound::ConcentrationBound(const PriorFamily& prior, double tau,
                                       ConcentrationParams params, QuadratureConfig quad)
    : tau_(tau), exponent_a_(prior.exponent_a), params_(params) {
    params.check();
    require_tau_01(tau, "concentration_bound");
    const double a = prior.exponent_a;
    const double ed = params.eta * params.delta;
    const double log_t_star = std::log(1.0 / ed - 1.0) - 2.0 * std::log(tau);

    // Tail integral of t^{-(a+3/2)} L(t) over (t*, inf): the kernel quadrature
    // with x = 0 and the exponent shifted by 1/2.
    const auto& sv = prior.local_density;
    auto psi = [&](double v) { return -(a + 0.5) * v + sv.log_evaluate_logt(v); };
    quad.relative_tolerance = std::min(quad.relative_tolerance, 1e-11);
    std::vector<double> seeds{log_t_star, log_t_star + 1.0};
    double log_T = log_integrate(psi, log_t_star, kInf, seeds, quad).log_value;

    double log_L_star = sv.log_evaluate_logt(log_t_star);
    log_xi_ = log_T + std::log(a + 0.5) + (a + 0.5) * log_t_star - log_L_star;
    log_Delta_ = log_xi_ + log_L_star;
    log_H_ = std::log(a + 0.5) + a * std::log1p(-ed) - std::log(prior.normalizer_K) -
             (a + 0.5) * std::log(ed);
}

double ConcentrationBound::log_bound(double x) const {
    return log_H_ - params_.eta * (1.0 - params_.delta) * 0.5 * x * x -
           2.0 * exponent_a_ * std::log(tau_) - log_Delta_;
}

LogScaled concentration_bound(const PriorFamily& prior, double x, double tau,
                              ConcentrationParams params) {
    ConcentrationBound cb(prior, tau, params);
    return LogScaled::from_log(cb.log_bound(x));
}

double GapEnvelope::h1(double x) const {
    double ax = std::fabs(x);
    if (ax == 0.0) return kInf;
    const double a = prior.exponent_a;
    // integral_0^{s x^2} e^{-u/2} u^{a-1/2} du = 2^{a+1/2} gamma(a+1/2, s x^2 / 2)
    double log_den = std::log(ax) + (a + 0.5) * std::numbers::ln2 +
                     log_lower_gamma(a + 0.5, 0.5 * s * x * x);
    return std::exp(std::log(C_star) - log_den);
}

double GapEnvelope::h2(double x, double tau) const {
    ConcentrationBound cb(prior, tau, params);
    double ax = std::fabs(x);
    if (ax == 0.0) return 0.0;
    return std::exp(std::log(ax) + cb.log_bound(x));
}

GapEnvelope gap_envelope(const PriorFamily& prior, ConcentrationParams params) {
    params.check();
    const auto& sv = prior.local_density;
    if (!(sv.lower_c0 > 0.0) || !(sv.lower_t0 > 0.0) || !(sv.upper_bound_M > 0.0))
        throw std::invalid_argument("gap_envelope: prior lacks (M, c0, t0) certificates");
    if (!(params.c() > 2.0))
        throw std::invalid_argument("gap_envelope: requires 2/(eta(1-delta)) > 2");
    const double a = prior.exponent_a;
    // integral_0^inf e^{-u/2} u^{a+1/2} du = 2^{a+3/2} Gamma(a+3/2)
    double gamma_int = std::exp((a + 1.5) * std::numbers::ln2 + log_gamma(a + 1.5));
    GapEnvelope env;
    env.prior = prior;
    env.params = params;
    env.C_star = sv.upper_bound_M * gamma_int /
                 (sv.lower_c0 * std::pow(1.0 - params.eta, 1.0 + a));
    env.s = 1.0 / (1.0 + sv.lower_t0);
    return env;
}

double tail_sup_h(const GapEnvelope& envelope, const PriorFamily& prior, double tau, double rho) {
    require_tau_01(tau, "tail_sup_h");
    if (!(rho > envelope.params.c()))
        throw std::invalid_argument("tail_sup_h: requires rho > c = 2/(eta(1-delta))");
    const double a = prior.exponent_a;
    double threshold = std::sqrt(rho * 2.0 * a * std::log(1.0 / tau));
    ConcentrationBound cb(prior, tau, envelope.params);
    double sup = 0.0;
    for (int k = 1; k <= 5000; ++k) {
        double x = threshold + 0.01 * static_cast<double>(k);
        double h2 = std::exp(std::log(x) + cb.log_bound(x));
        double val = envelope.h1(x) + h2;
        sup = std::max(sup, val);
    }
    return sup;
}

double zeta_threshold(double tau, double a) {
    require_tau_01(tau, "zeta_threshold");
    return std::sqrt(4.0 * a * std::log(1.0 / tau));
}

LogScaled variance_crossterm_bound(const PriorFamily& prior, double x, double tau) {
    const double a = prior.exponent_a;
    if (!(a >= 0.5) || !(a < 1.0))
        throw std::out_of_range("variance_crossterm_bound: requires a in [1/2,1)");
    require_tau_01_closed(tau, "variance_crossterm_bound");
    double log_2km = std::numbers::ln2 + std::log(prior.normalizer_K) +
                     std::log(prior.local_density.upper_bound_M);
    return LogScaled::from_log(log_2km + 0.5 * x * x + 2.0 * a * std::log(tau));
}

namespace {

void require_half(const PriorFamily& prior, const char* who) {
    if (std::fabs(prior.exponent_a - 0.5) > 1e-12)
        throw std::domain_error(std::string(who) + ": stated for priors with a = 1/2 only");
}

}  // namespace

LogScaled ik_integral(const PriorFamily& prior, double k, double y, double tau,
                      QuadratureConfig quad) {
    require_half(prior, "ik_integral");
    if (!(y > 0.0)) throw std::invalid_argument("ik_integral: y must be positive");
    if (k != 0.5 && k != 1.5 && k != 2.5)
        throw std::invalid_argument("ik_integral: k must be one of 1/2, 3/2, 5/2");
    // I_k = e^y G(k-1/2, k; x = sqrt(2y), tau).
    PosteriorContext ctx{prior, tau, quad};
    ctx.quad.relative_tolerance = std::min(ctx.quad.relative_tolerance, 1e-12);
    double log_G = kernel_integral(ctx, k - 0.5, k, std::sqrt(2.0 * y)).log_value;
    return LogScaled::from_log(y + log_G);
}

IkBounds ik_bounds(const PriorFamily& prior, double y, double tau) {
    require_half(prior, "ik_bounds");
    if (!prior.local_density.nondecreasing)
        throw std::domain_error("ik_bounds: requires a nondecreasing L");
    if (!(y > 0.0)) throw std::invalid_argument("ik_bounds: y must be positive");
    require_tau_01(tau, "ik_bounds");

    const double K = prior.normalizer_K;
    const double M = prior.local_density.upper_bound_M;
    const double L1 = prior.local_density.evaluate(1.0);
    const double sqrt2 = std::numbers::sqrt2;
    const double ey = std::exp(y), ey2 = std::exp(0.5 * y);
    const double et2y = std::exp(tau * tau * y), ety = std::exp(tau * y);

    IkBounds out;
    if (tau < 1.0 / sqrt2) {
        out.lower_i52 =
            L1 * tau * ((tau / y) * (ey2 - et2y) + (1.0 / (sqrt2 * y)) * (ey - ey2));
        out.upper_i32 =
            M * tau * (et2y * tau + 2.0 * ey2 * (1.0 / sqrt2 - tau) + (sqrt2 / y) * (ey - ey2));
    } else {
        out.out_of_range.push_back("lower_i52");
        out.out_of_range.push_back("upper_i32");
    }
    if (tau < 0.5) {
        out.upper_i12 = tau * (et2y / (K * tau) +
                               2.0 * M * ety * (1.0 / tau - 1.0 / std::sqrt(tau)) +
                               2.0 * M * ey2 * (1.0 / std::sqrt(tau) - sqrt2) +
                               (2.0 * M * sqrt2 / y) * (ey - ey2));
        out.lower_i12 = L1 * tau * (et2y * (1.0 / tau - 1.0 / std::sqrt(tau)) +
                                    (sqrt2 / y) * (ey - ety) + (0.5 / y) * (ey - ey2));
    } else {
        out.out_of_range.push_back("upper_i12");
        out.out_of_range.push_back("lower_i12");
    }
    if (!out.lower_i52 && !out.upper_i12)
        throw std::out_of_range("ik_bounds: tau >= 1/sqrt(2), no bound is valid");
    return out;
}

double variance_lower_expression(const PriorFamily& prior, double y, double tau,
                                 QuadratureConfig quad) {
    double log_i12 = ik_integral(prior, 0.5, y, tau, quad).log_value;
    double r52 = std::exp(ik_integral(prior, 2.5, y, tau, quad).log_value - log_i12);
    double r32 = std::exp(ik_integral(prior, 1.5, y, tau, quad).log_value - log_i12);
    return 2.0 * y * (r52 - r32 * r32);
}

RateFormulas rate_formulas(long long n, long long p, double tau, double a) {
    if (p <= 0 || p >= n) throw std::invalid_argument("rate_formulas: requires 0 < p < n");
    require_tau_01(tau, "rate_formulas");
    double np = static_cast<double>(n) / static_cast<double>(p);
    double log_inv_tau2a = 2.0 * a * std::log(1.0 / tau);
    double t2a = std::pow(tau, 2.0 * a);
    RateFormulas r;
    r.minimax = 2.0 * static_cast<double>(p) * std::log(np);
    r.thm31_rate = static_cast<double>(p) * log_inv_tau2a +
                   static_cast<double>(n - p) * t2a * std::sqrt(log_inv_tau2a);
    r.thm32_rate = static_cast<double>(p) +
                   static_cast<double>(n - p) * t2a * std::sqrt(log_inv_tau2a);
    r.thm35_rate = static_cast<double>(n - p) * tau * std::sqrt(std::log(1.0 / tau));
    return r;
}

}  // namespace shrinkage
