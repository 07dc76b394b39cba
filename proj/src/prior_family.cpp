#include "shrinkage/prior_family.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "shrinkage/log_space.hpp"
#include "shrinkage/quadrature.hpp"
#include "shrinkage/special.hpp"

namespace shrinkage {

namespace {

constexpr double kPi = std::numbers::pi;

// ---------------------------------------------------------------------------
// Generalized double Pareto. The local-variance density comes from the
// exponential-gamma mixture t | mu ~ Exp(mu^2/2), mu ~ Gamma(alpha, 1), which
// gives K = 1/(2 Gamma(alpha)), a = alpha/2 and
//   L(t) = integral_0^infty w^{alpha+1} exp(-w^2/2 - w/sqrt(t)) dw.
// L has no elementary form; it is tabulated once on a fine grid in log t and
// interpolated with a monotone cubic, with the exact Watson asymptotes used
// outside the table.
// ---------------------------------------------------------------------------

double gdp_log_L_direct(double alpha, double log_t) {
    double s = std::exp(-0.5 * log_t);  // 1/sqrt(t)
    auto psi = [&](double z) {
        // w = e^z; integrand w^{alpha+1} e^{-w^2/2 - s w} dw
        double e2z = (z > 400.0) ? std::numeric_limits<double>::infinity() : std::exp(2.0 * z);
        double ez = (z > 700.0) ? std::numeric_limits<double>::infinity() : std::exp(z);
        return (alpha + 2.0) * z - 0.5 * e2z - s * ez;
    };
    // Stationary point: e^z = 2(alpha+2) / (s + sqrt(s^2 + 4(alpha+2))).
    double wstar = 2.0 * (alpha + 2.0) / (s + std::sqrt(s * s + 4.0 * (alpha + 2.0)));
    double seed = std::log(wstar);
    QuadratureConfig cfg;
    cfg.relative_tolerance = 1e-12;
    std::vector<double> seeds{seed};
    return log_integrate(psi, -std::numeric_limits<double>::infinity(),
                         std::numeric_limits<double>::infinity(), seeds, cfg)
        .log_value;
}

struct GdpTable {
    double alpha;
    double v_lo, v_hi, step;
    std::vector<double> values;  // log L at grid nodes
    std::vector<double> slopes;  // monotone cubic Hermite slopes
    double log_L_inf;            // log lim_{t->inf} L(t) = log(2^{a/2} Gamma(a/2+1)) with a=alpha
    double log_m1;               // log integral w^{alpha+2} e^{-w^2/2} dw
    double log_gamma_a2;         // log Gamma(alpha+2)
    double watson_ratio;         // Gamma(alpha+4)/Gamma(alpha+2) / 2

    double eval(double v) const {
        if (v <= v_lo) {
            // t -> 0: L ~ Gamma(alpha+2) t^{(alpha+2)/2} (1 - (alpha+2)(alpha+3) t / 2 + ...)
            double corr = watson_ratio * std::exp(v);
            return log_gamma_a2 + 0.5 * (alpha + 2.0) * v + std::log1p(-corr);
        }
        if (v >= v_hi) {
            // t -> inf: L ~ L_inf - m1 / sqrt(t)
            double corr = std::exp(log_m1 - log_L_inf - 0.5 * v);
            return log_L_inf + std::log1p(-corr);
        }
        double u = (v - v_lo) / step;
        std::size_t i = std::min(static_cast<std::size_t>(u), values.size() - 2);
        double x = u - static_cast<double>(i);  // in [0,1]
        double h00 = (1 + 2 * x) * (1 - x) * (1 - x);
        double h10 = x * (1 - x) * (1 - x);
        double h01 = x * x * (3 - 2 * x);
        double h11 = x * x * (x - 1);
        return h00 * values[i] + h10 * step * slopes[i] + h01 * values[i + 1] +
               h11 * step * slopes[i + 1];
    }
};

std::shared_ptr<const GdpTable> build_gdp_table(double alpha) {
    auto tab = std::make_shared<GdpTable>();
    tab->alpha = alpha;
    tab->v_lo = -80.0;
    tab->v_hi = 80.0;
    tab->step = 0.01;
    std::size_t n = static_cast<std::size_t>(std::lround((tab->v_hi - tab->v_lo) / tab->step)) + 1;
    tab->values.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        tab->values[i] = gdp_log_L_direct(alpha, tab->v_lo + tab->step * static_cast<double>(i));

    // Fritsch-Carlson slopes keep the interpolant monotone like the data.
    std::vector<double>& d = tab->slopes;
    d.assign(n, 0.0);
    std::vector<double> sec(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) sec[i] = (tab->values[i + 1] - tab->values[i]) / tab->step;
    d[0] = sec[0];
    d[n - 1] = sec[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i) d[i] = 0.5 * (sec[i - 1] + sec[i]);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (sec[i] == 0.0) {
            d[i] = d[i + 1] = 0.0;
        } else {
            double a = d[i] / sec[i];
            double b = d[i + 1] / sec[i];
            double r = a * a + b * b;
            if (r > 9.0) {
                double f = 3.0 / std::sqrt(r);
                d[i] = f * a * sec[i];
                d[i + 1] = f * b * sec[i];
            }
        }
    }

    tab->log_L_inf = 0.5 * alpha * std::numbers::ln2 + log_gamma(0.5 * alpha + 1.0);
    tab->log_m1 = 0.5 * (alpha + 1.0) * std::numbers::ln2 + log_gamma(0.5 * (alpha + 3.0));
    tab->log_gamma_a2 = log_gamma(alpha + 2.0);
    tab->watson_ratio = 0.5 * (alpha + 2.0) * (alpha + 3.0);
    return tab;
}

// Lazily built, shared across copies of the family.
class GdpEvaluator {
  public:
    explicit GdpEvaluator(double alpha) : alpha_(alpha) {}

    double operator()(double log_t) const {
        std::call_once(state_->once, [this] { state_->table = build_gdp_table(alpha_); });
        return state_->table->eval(log_t);
    }

  private:
    struct State {
        std::once_flag once;
        std::shared_ptr<const GdpTable> table;
    };
    double alpha_;
    std::shared_ptr<State> state_ = std::make_shared<State>();
};

void check_exponent(double a, const std::string& name) {
    if (!(a > 0.0) || !(a < 1.0))
        throw std::out_of_range(name + ": class exponent a = " + std::to_string(a) +
                                " outside (0,1)");
}

}  // namespace

PriorFamily make_horseshoe() {
    PriorFamily f;
    f.name = "horseshoe";
    f.exponent_a = 0.5;
    f.normalizer_K = 1.0 / kPi;
    f.local_density.log_eval = [](double v) { return v - log1p_exp(v); };
    f.local_density.upper_bound_M = 1.0;
    f.local_density.lower_c0 = 0.5;
    f.local_density.lower_t0 = 1.0;
    f.local_density.limit_at_infinity = 1.0;
    f.local_density.nondecreasing = true;
    f.in_theorem_range = true;
    return f;
}

PriorFamily make_tpbn(double a_beta, double b_beta) {
    if (!(a_beta > 0.0) || !(b_beta > 0.0))
        throw std::invalid_argument("tpbn: parameters must be positive");
    check_exponent(a_beta, "tpbn");
    PriorFamily f;
    std::ostringstream nm;
    nm << "tpbn(" << a_beta << "," << b_beta << ")";
    f.name = nm.str();
    f.exponent_a = a_beta;
    f.normalizer_K = 1.0 / beta_function(a_beta, b_beta);
    double p = a_beta + b_beta;
    f.local_density.log_eval = [p](double v) { return p * (v - log1p_exp(v)); };
    f.local_density.upper_bound_M = 1.0;
    f.local_density.lower_t0 = 1.0;
    f.local_density.lower_c0 = std::exp(p * (0.0 - log1p_exp(0.0)));  // (1/2)^p
    f.local_density.limit_at_infinity = 1.0;
    f.local_density.nondecreasing = true;
    f.in_theorem_range = a_beta >= 0.5;
    return f;
}

PriorFamily make_named(const std::string& name, const std::vector<double>& params) {
    auto want = [&](std::size_t k) {
        if (params.size() != k)
            throw std::invalid_argument("prior '" + name + "' expects " + std::to_string(k) +
                                        " parameter(s)");
    };
    if (name == "horseshoe") {
        want(0);
        return make_horseshoe();
    }
    if (name == "tpbn") {
        want(2);
        return make_tpbn(params[0], params[1]);
    }
    if (name == "inverse_gamma") {
        want(2);
        double alpha = params[0], beta = params[1];
        if (!(beta > 0.0)) throw std::invalid_argument("inverse_gamma: beta must be positive");
        check_exponent(alpha, "inverse_gamma");
        PriorFamily f;
        std::ostringstream nm;
        nm << "inverse_gamma(" << alpha << "," << beta << ")";
        f.name = nm.str();
        f.exponent_a = alpha;
        f.normalizer_K = std::exp(alpha * std::log(beta) - log_gamma(alpha));
        f.local_density.log_eval = [beta](double v) { return -beta * std::exp(-v); };
        f.local_density.upper_bound_M = 1.0;
        f.local_density.lower_t0 = 1.0;
        f.local_density.lower_c0 = std::exp(-beta);
        f.local_density.limit_at_infinity = 1.0;
        f.local_density.nondecreasing = true;
        f.in_theorem_range = alpha >= 0.5;
        return f;
    }
    if (name == "half_t") {
        want(1);
        double nu = params[0];
        if (!(nu > 0.0)) throw std::invalid_argument("half_t: nu must be positive");
        check_exponent(nu / 2.0, "half_t");
        PriorFamily f;
        std::ostringstream nm;
        nm << "half_t(" << nu << ")";
        f.name = nm.str();
        f.exponent_a = nu / 2.0;
        f.normalizer_K = std::exp(log_gamma(0.5 * (nu + 1.0)) - log_gamma(0.5 * nu) -
                                  0.5 * std::log(nu * kPi));
        double e = 0.5 * (nu + 1.0);
        double log_nu = std::log(nu);
        f.local_density.log_eval = [e, log_nu](double v) { return e * (v - log1p_exp(v - log_nu)); };
        f.local_density.upper_bound_M = std::exp(e * log_nu);  // nu^{(nu+1)/2}
        f.local_density.lower_t0 = 1.0;
        f.local_density.lower_c0 = std::exp(e * (std::log(nu) - std::log1p(nu)));
        f.local_density.limit_at_infinity = f.local_density.upper_bound_M;
        f.local_density.nondecreasing = true;
        f.in_theorem_range = f.exponent_a >= 0.5;
        return f;
    }
    if (name == "gdp") {
        want(1);
        double alpha = params[0];
        check_exponent(alpha / 2.0, "gdp");
        PriorFamily f;
        std::ostringstream nm;
        nm << "gdp(" << alpha << ")";
        f.name = nm.str();
        f.exponent_a = alpha / 2.0;
        f.normalizer_K = std::exp(-std::numbers::ln2 - log_gamma(alpha));
        GdpEvaluator ev(alpha);
        f.local_density.log_eval = ev;
        double log_L_inf = 0.5 * alpha * std::numbers::ln2 + log_gamma(0.5 * alpha + 1.0);
        f.local_density.upper_bound_M = std::exp(log_L_inf);
        f.local_density.lower_t0 = 1.0;
        // L is nondecreasing, so L(1) certifies the tail; shaved by 1e-9 to
        // stay below the tabulated values it will be compared against.
        f.local_density.lower_c0 = std::exp(gdp_log_L_direct(alpha, 0.0)) * (1.0 - 1e-9);
        f.local_density.limit_at_infinity = f.local_density.upper_bound_M;
        f.local_density.nondecreasing = true;
        f.in_theorem_range = f.exponent_a >= 0.5;
        return f;
    }
    if (name == "neg") {
        want(1);
        double b = params[0];
        check_exponent(b, "neg");
        PriorFamily f = make_tpbn(b, 1.0);
        std::ostringstream nm;
        nm << "neg(" << b << ")";
        f.name = nm.str();
        return f;
    }
    throw std::invalid_argument("unknown prior family: " + name);
}

PriorFamily parse_prior_spec(const std::string& spec) {
    auto colon = spec.find(':');
    std::string name = spec.substr(0, colon);
    std::vector<double> params;
    if (colon != std::string::npos) {
        std::stringstream ss(spec.substr(colon + 1));
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok.empty()) continue;
            params.push_back(std::stod(tok));
        }
    }
    return make_named(name, params);
}

std::vector<PriorFamily> registry() {
    std::vector<PriorFamily> out;
    out.push_back(make_horseshoe());
    out.push_back(make_tpbn(0.5, 1.0));
    out.push_back(make_named("inverse_gamma", {0.5, 1.0}));
    out.push_back(make_named("gdp", {1.0}));
    out.push_back(make_named("half_t", {1.0}));
    out.push_back(make_named("neg", {0.5}));
    return out;
}

ValidationReport validate(const PriorFamily& prior) {
    ValidationReport rep;
    const auto& sv = prior.local_density;
    const double a = prior.exponent_a;
    rep.exponent_ok = a > 0.0 && a < 1.0;

    // Normalization: K * integral t^{-a-1} L(t) dt over (0,inf), in v = log t.
    try {
        auto psi = [&](double v) { return -a * v + sv.log_evaluate_logt(v); };
        QuadratureConfig cfg;
        cfg.relative_tolerance = 1e-10;
        std::vector<double> seeds{0.0};
        double log_I = log_integrate(psi, -std::numeric_limits<double>::infinity(),
                                     std::numeric_limits<double>::infinity(), seeds, cfg)
                           .log_value;
        rep.normalization_residual = std::fabs(prior.normalizer_K * std::exp(log_I) - 1.0);
        rep.normalization_ok = rep.normalization_residual <= 1e-8;
    } catch (const std::exception&) {
        rep.normalization_residual = std::numeric_limits<double>::infinity();
        rep.normalization_ok = false;
    }

    // Slow variation: |L(2t)/L(t) - 1| at t in {1e6, 1e8, 1e10}.
    rep.max_slow_variation_gap = 0.0;
    for (double t : {1e6, 1e8, 1e10}) {
        double lt = std::log(t);
        double gap = std::fabs(std::expm1(sv.log_evaluate_logt(lt + std::numbers::ln2) -
                                          sv.log_evaluate_logt(lt)));
        rep.max_slow_variation_gap = std::max(rep.max_slow_variation_gap, gap);
    }
    rep.slow_variation_ok = rep.max_slow_variation_gap < 1e-3;

    // Upper bound and monotonicity on a 1000-point log grid over (1e-6, 1e12).
    const int n_grid = 1000;
    double lo = std::log(1e-6), hi = std::log(1e12);
    double prev = -std::numeric_limits<double>::infinity();
    rep.max_L_on_grid = 0.0;
    rep.monotone_ok = true;
    for (int i = 0; i < n_grid; ++i) {
        double v = lo + (hi - lo) * static_cast<double>(i) / (n_grid - 1);
        double logL = sv.log_evaluate_logt(v);
        rep.max_L_on_grid = std::max(rep.max_L_on_grid, std::exp(logL));
        if (sv.nondecreasing && logL < prev - 1e-9) rep.monotone_ok = false;
        prev = std::max(prev, logL);
    }
    rep.upper_bound_ok = rep.max_L_on_grid <= sv.upper_bound_M * (1.0 + 1e-12);

    // Tail lower bound: min L over [t0, 1e12] against c0.
    double tl = std::log(sv.lower_t0), th = std::log(1e12);
    rep.min_L_tail = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n_grid; ++i) {
        double v = tl + (th - tl) * static_cast<double>(i) / (n_grid - 1);
        rep.min_L_tail = std::min(rep.min_L_tail, std::exp(sv.log_evaluate_logt(v)));
    }
    rep.lower_bound_ok = rep.min_L_tail >= sv.lower_c0 * (1.0 - 1e-12);

    return rep;
}

}  // namespace shrinkage
