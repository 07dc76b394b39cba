#include "shrinkage/posterior.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace shrinkage {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct KernelShape {
    double j, m, a, half_x2, two_log_tau;

    // log integrand in v = log t, jacobian included.
    double operator()(double v) const {
        double w = v + two_log_tau;
        double p = j * w - m * log1p_exp(w) - a * v;
        if (half_x2 != 0.0) p -= half_x2 * logistic_neg(w);
        return p;
    }
};

std::vector<double> kernel_seeds(double x, double two_log_tau) {
    std::vector<double> seeds{0.0, -two_log_tau};
    if (x != 0.0) seeds.push_back(std::log(std::max(x * x / 2.0, 1.0)) - two_log_tau);
    return seeds;
}

double log_G(const PosteriorContext& ctx, double j, double m, double x, double rtol,
             double v_lo = -kInf, double v_hi = kInf) {
    const double a = ctx.prior.exponent_a;
    if (j < 0.0) throw std::invalid_argument("kernel_integral: j must be nonnegative");
    if (!(j - m < a))
        throw std::invalid_argument("kernel_integral: divergent tail, requires j - m < a");
    double two_log_tau = 2.0 * std::log(ctx.tau);
    KernelShape shape{j, m, a, x * x / 2.0, two_log_tau};
    const auto& prior = ctx.prior;
    auto psi = [&](double v) { return shape(v) + prior.log_L(v); };
    QuadratureConfig cfg = ctx.quad;
    cfg.relative_tolerance = rtol;
    auto seeds = kernel_seeds(x, two_log_tau);
    return log_integrate(psi, v_lo, v_hi, seeds, cfg).log_value;
}

}  // namespace

void PosteriorContext::check() const {
    if (!(tau > 0.0)) throw std::invalid_argument("PosteriorContext: tau must be positive");
    quad.check();
}

LogScaled kernel_integral(const PosteriorContext& ctx, double j, double m, double x) {
    ctx.check();
    return LogScaled::from_log(log_G(ctx, j, m, x, ctx.quad.relative_tolerance));
}

double kappa_moment(const PosteriorContext& ctx, double x, int r) {
    ctx.check();
    if (r != 1 && r != 2) throw std::invalid_argument("kappa_moment: r must be 1 or 2");
    double rtol = ctx.quad.relative_tolerance;
    double num = log_G(ctx, 0.0, r + 0.5, x, rtol);
    double den = log_G(ctx, 0.0, 0.5, x, rtol);
    return std::exp(num - den);
}

double one_minus_kappa_mean(const PosteriorContext& ctx, double x) {
    ctx.check();
    double rtol = ctx.quad.relative_tolerance;
    double num = log_G(ctx, 1.0, 1.5, x, rtol);
    double den = log_G(ctx, 0.0, 0.5, x, rtol);
    return std::exp(num - den);
}

double posterior_mean(const PosteriorContext& ctx, double x) {
    if (x == 0.0) return 0.0;
    return x * (1.0 - kappa_moment(ctx, x, 1));
}

PosteriorVariance posterior_variance(const PosteriorContext& ctx, double x) {
    ctx.check();
    // The identity gap contract (1e-8 relative) needs the component integrals
    // resolved two orders tighter than it, since the x^2-weighted moments
    // nearly cancel for large |x|.
    double rtol = std::min(ctx.quad.relative_tolerance, 1e-12);
    double den = log_G(ctx, 0.0, 0.5, x, rtol);
    double e_omk = std::exp(log_G(ctx, 1.0, 1.5, x, rtol) - den);

    if (x == 0.0) {
        // Both identities collapse to E[1-kappa | 0, tau].
        return {e_omk, 0.0};
    }

    double x2 = x * x;
    double e_k = std::exp(log_G(ctx, 0.0, 1.5, x, rtol) - den);
    double e_k2 = std::exp(log_G(ctx, 0.0, 2.5, x, rtol) - den);
    double e_omk2 = std::exp(log_G(ctx, 2.0, 2.5, x, rtol) - den);

    double v1 = e_omk - x2 * e_k * e_k + x2 * e_k2;
    double v2 = e_omk - x2 * e_omk * e_omk + x2 * e_omk2;
    double gap = std::fabs(v1 - v2);
    PosteriorVariance out{v1, gap};
    if (!(gap <= 1e-8 * (1.0 + out.value)))
        throw std::runtime_error("posterior_variance: identity gap " + std::to_string(gap) +
                                 " exceeds tolerance; quadrature inconsistent");
    return out;
}

double kappa_tail_prob(const PosteriorContext& ctx, double x, double eta) {
    ctx.check();
    if (!(eta > 0.0) || !(eta < 1.0)) throw std::invalid_argument("kappa_tail_prob: eta in (0,1)");
    // kappa > eta  <=>  t < (1/eta - 1)/tau^2.
    double v_cut = std::log(1.0 / eta - 1.0) - 2.0 * std::log(ctx.tau);
    double rtol = ctx.quad.relative_tolerance;
    double num = log_G(ctx, 0.0, 0.5, x, rtol, -kInf, v_cut);
    double den = log_G(ctx, 0.0, 0.5, x, rtol);
    double p = std::exp(num - den);
    return std::clamp(p, 0.0, 1.0);
}

double kappa_cdf(const PosteriorContext& ctx, double x, double eta) {
    ctx.check();
    if (!(eta > 0.0) || !(eta < 1.0)) throw std::invalid_argument("kappa_cdf: eta in (0,1)");
    double v_cut = std::log(1.0 / eta - 1.0) - 2.0 * std::log(ctx.tau);
    double rtol = ctx.quad.relative_tolerance;
    double num = log_G(ctx, 0.0, 0.5, x, rtol, v_cut, kInf);
    double den = log_G(ctx, 0.0, 0.5, x, rtol);
    return std::clamp(std::exp(num - den), 0.0, 1.0);
}

// ---------------------------------------------------------------------------
// Inverse-CDF sampling
// ---------------------------------------------------------------------------

namespace {

// log of integral over one cell of the log-linear model through (psi0, psi1).
double log_cell_mass(double psi0, double psi1, double width) {
    double q = psi1 - psi0;  // slope * width
    double lf;               // log((e^q - 1)/q)
    if (std::fabs(q) < 1e-9) {
        lf = q / 2.0;
    } else if (q > 0.0) {
        lf = q + std::log1p(-std::exp(-q)) - std::log(q);
    } else {
        lf = std::log(-std::expm1(q)) - std::log(-q);
    }
    return psi0 + lf + std::log(width);
}

}  // namespace

KappaSampler::KappaSampler(const PosteriorContext& ctx, double x) : x_(x) {
    ctx.check();
    two_log_tau_ = 2.0 * std::log(ctx.tau);
    const double a = ctx.prior.exponent_a;
    KernelShape shape{0.0, 0.5, a, x * x / 2.0, two_log_tau_};
    const auto& prior = ctx.prior;
    auto psi = [&](double v) { return shape(v) + prior.log_L(v); };

    auto seeds = kernel_seeds(x, two_log_tau_);
    auto [w_lo, w_hi] = quad_detail::resolve_window(psi, -kInf, kInf, seeds);

    // Crude total for the relative refinement criterion.
    double h0 = 0.25;
    std::size_t n0 = std::max<std::size_t>(64, static_cast<std::size_t>(std::ceil((w_hi - w_lo) / h0)));
    h0 = (w_hi - w_lo) / static_cast<double>(n0);
    std::vector<double> v0(n0 + 1), p0(n0 + 1);
    for (std::size_t i = 0; i <= n0; ++i) {
        v0[i] = w_lo + h0 * static_cast<double>(i);
        p0[i] = psi(v0[i]);
    }
    double log_total = -kInf;
    for (std::size_t i = 0; i < n0; ++i)
        log_total = log_add(log_total, log_cell_mass(p0[i], p0[i + 1], h0));

    // Split cells until the one-segment vs two-segment mass difference is a
    // negligible fraction of the total.
    struct Cell {
        double v0, v1, p0, p1;
    };
    std::vector<Cell> stack, done;
    for (std::size_t i = 0; i < n0; ++i) stack.push_back({v0[i], v0[i + 1], p0[i], p0[i + 1]});
    const double cell_tol = 1e-10;
    const int max_pop = 400000;
    int pops = 0;
    while (!stack.empty()) {
        if (++pops > max_pop) throw std::runtime_error("KappaSampler: grid construction failed");
        Cell c = stack.back();
        stack.pop_back();
        double vm = 0.5 * (c.v0 + c.v1);
        double pm = psi(vm);
        double m1 = log_cell_mass(c.p0, c.p1, c.v1 - c.v0);
        double m2 = log_add(log_cell_mass(c.p0, pm, vm - c.v0), log_cell_mass(pm, c.p1, c.v1 - vm));
        double err = std::fabs(std::expm1(m1 - m2)) * std::exp(m2 - log_total);
        if (err <= cell_tol || (c.v1 - c.v0) < 1e-7) {
            done.push_back(c);
        } else {
            stack.push_back({c.v0, vm, c.p0, pm});
            stack.push_back({vm, c.v1, pm, c.p1});
        }
    }
    std::sort(done.begin(), done.end(), [](const Cell& a, const Cell& b) { return a.v0 < b.v0; });

    node_v_.reserve(done.size() + 1);
    node_psi_.reserve(done.size() + 1);
    std::vector<double> log_mass(done.size());
    double lt = -kInf;
    for (std::size_t i = 0; i < done.size(); ++i) {
        log_mass[i] = log_cell_mass(done[i].p0, done[i].p1, done[i].v1 - done[i].v0);
        lt = log_add(lt, log_mass[i]);
        node_v_.push_back(done[i].v0);
        node_psi_.push_back(done[i].p0);
    }
    node_v_.push_back(done.back().v1);
    node_psi_.push_back(done.back().p1);

    cum_.resize(done.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < done.size(); ++i) {
        acc += std::exp(log_mass[i] - lt);
        cum_[i] = acc;
    }
    cum_.back() = 1.0;
}

std::pair<double, double> KappaSampler::draw_pair(RngStream& rng) const {
    double u = rng.next_uniform();
    auto it = std::upper_bound(cum_.begin(), cum_.end(), u);
    std::size_t i = std::min(static_cast<std::size_t>(it - cum_.begin()), cum_.size() - 1);
    double lo_cum = (i == 0) ? 0.0 : cum_[i - 1];
    double r = (u - lo_cum) / (cum_[i] - lo_cum);
    r = std::clamp(r, 0.0, 1.0);

    double v0 = node_v_[i], v1 = node_v_[i + 1];
    double q = node_psi_[i + 1] - node_psi_[i];
    double v;
    if (std::fabs(q) < 1e-9) {
        v = v0 + r * (v1 - v0);
    } else {
        // Invert the log-linear density within the cell.
        v = v0 + (v1 - v0) * std::log1p(r * std::expm1(q)) / q;
    }
    double w = v + two_log_tau_;
    double kappa = logistic_neg(w);        // 1/(1+e^w)
    double omk = logistic_neg(-w);         // e^w/(1+e^w)
    const double lo = std::numeric_limits<double>::denorm_min();
    const double hi = 1.0 - std::numeric_limits<double>::epsilon() / 2.0;
    kappa = std::clamp(kappa, lo, hi);
    omk = std::clamp(omk, lo, hi);
    return {kappa, omk};
}

double KappaSampler::draw_theta(RngStream& rng) const {
    auto [kappa, omk] = draw_pair(rng);
    (void)kappa;
    return omk * x_ + std::sqrt(omk) * rng.next_normal();
}

std::vector<double> sample_kappa(const PosteriorContext& ctx, double x, RngStream& rng, int n_draws) {
    if (n_draws < 1) throw std::invalid_argument("sample_kappa: n_draws must be >= 1");
    KappaSampler sampler(ctx, x);
    std::vector<double> out(static_cast<std::size_t>(n_draws));
    for (auto& k : out) k = sampler.draw_kappa(rng);
    return out;
}

std::vector<double> sample_theta(const PosteriorContext& ctx, double x, RngStream& rng, int n_draws) {
    if (n_draws < 1) throw std::invalid_argument("sample_theta: n_draws must be >= 1");
    KappaSampler sampler(ctx, x);
    std::vector<double> out(static_cast<std::size_t>(n_draws));
    for (auto& t : out) t = sampler.draw_theta(rng);
    return out;
}

}  // namespace shrinkage
