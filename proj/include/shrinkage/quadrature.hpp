#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "shrinkage/log_space.hpp"

// One-dimensional quadrature of strictly positive integrands carried entirely
// in log space. Integrals over t in (0,inf) are evaluated in v = log t, where
// the transformed integrand decays exponentially on both sides; a composite
// trapezoid rule on that line converges spectrally, and successive mesh
// halvings provide the error estimate (accepted once the relative difference
// between refinements is below the configured tolerance).

namespace shrinkage {

struct QuadratureConfig {
    double relative_tolerance = 1e-10;  // must lie in (0, 1e-4]
    int max_refinements = 30;           // >= 5

    void check() const {
        if (!(relative_tolerance > 0.0) || relative_tolerance > 1e-4)
            throw std::invalid_argument("QuadratureConfig: relative_tolerance must be in (0, 1e-4]");
        if (max_refinements < 5)
            throw std::invalid_argument("QuadratureConfig: max_refinements must be >= 5");
    }
};

class QuadratureError : public std::runtime_error {
  public:
    QuadratureError(const std::string& what, double last_log, double previous_log)
        : std::runtime_error(what), last_log_estimate(last_log), previous_log_estimate(previous_log) {}
    double last_log_estimate;
    double previous_log_estimate;
};

struct LogIntegral {
    double log_value;
    double rel_error;  // refinement-differencing estimate
    int refinements;
};

namespace quad_detail {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Integration window in the transformed coordinate. Infinite endpoints are
// replaced by finite ones where the integrand has decayed ~60 nats below its
// peak and is still falling.
template <class F>
std::pair<double, double> resolve_window(F&& log_f, double lo, double hi,
                                         std::span<const double> seeds) {
    std::vector<double> pts;
    if (std::isfinite(lo)) pts.push_back(lo);
    if (std::isfinite(hi)) pts.push_back(hi);
    for (double s : seeds)
        if (s > lo && s < hi) pts.push_back(s);
    if (pts.empty()) pts.push_back(0.0);

    double seed_lo = *std::min_element(pts.begin(), pts.end());
    double seed_hi = *std::max_element(pts.begin(), pts.end());

    auto eval = [&](double v) {
        double p = log_f(v);
        if (std::isnan(p)) throw std::invalid_argument("quadrature: integrand returned NaN");
        return p;
    };

    double psi_max = kNegInf;
    const double scan_step = 0.5;
    for (double v = seed_lo; v <= seed_hi + 1e-12; v += scan_step) psi_max = std::max(psi_max, eval(v));

    const double tail_cut = 60.0;
    const double step = 5.0;
    const double excursion_cap = 2.0e5;

    auto expand = [&](double start, double direction, bool open) {
        if (!open) return start;
        double edge = start;
        double prev = eval(edge);
        psi_max = std::max(psi_max, prev);
        while (true) {
            double next_edge = edge + direction * step;
            double cur = eval(next_edge);
            psi_max = std::max(psi_max, cur);
            bool deep = cur <= psi_max - tail_cut;
            bool falling = cur <= prev - 0.25;
            edge = next_edge;
            prev = cur;
            if (deep && falling) return edge;
            if (std::fabs(edge) > excursion_cap)
                throw QuadratureError("quadrature: integrand does not decay within the search window",
                                      cur, psi_max);
        }
    };

    double w_lo = expand(seed_lo, -1.0, !std::isfinite(lo));
    double w_hi = expand(seed_hi, +1.0, !std::isfinite(hi));
    return {w_lo, w_hi};
}

}  // namespace quad_detail

// Integral of exp(log_f(v)) dv over (lo, hi); either endpoint may be infinite.
// `seeds` are interior abscissas near which the integrand may peak.
template <class F>
LogIntegral log_integrate(F&& log_f, double lo, double hi, std::span<const double> seeds,
                          const QuadratureConfig& cfg) {
    cfg.check();
    if (!(lo < hi)) return {quad_detail::kNegInf, 0.0, 0};

    auto [a, b] = quad_detail::resolve_window(log_f, lo, hi, seeds);
    if (!(a < b)) return {quad_detail::kNegInf, 0.0, 0};

    auto eval = [&](double v) {
        double p = log_f(v);
        if (std::isnan(p)) throw std::invalid_argument("quadrature: integrand returned NaN");
        return p;
    };

    std::size_t n = std::max<std::size_t>(32, static_cast<std::size_t>(std::ceil((b - a) / 0.5)));
    double h = (b - a) / static_cast<double>(n);

    double mx = quad_detail::kNegInf;
    std::vector<double> psi(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        psi[i] = eval(a + h * static_cast<double>(i));
        mx = std::max(mx, psi[i]);
    }
    if (!std::isfinite(mx)) return {quad_detail::kNegInf, 0.0, 0};
    double s = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
        double w = (i == 0 || i == n) ? 0.5 : 1.0;
        s += w * std::exp(psi[i] - mx);
    }
    double log_prev = mx + std::log(s) + std::log(h);

    double log_cur = log_prev;
    for (int level = 1; level <= cfg.max_refinements; ++level) {
        double hm = h / 2.0;
        double mmx = quad_detail::kNegInf;
        std::vector<double> mid(n);
        for (std::size_t i = 0; i < n; ++i) {
            mid[i] = eval(a + h * static_cast<double>(i) + hm);
            mmx = std::max(mmx, mid[i]);
        }
        double ms = 0.0;
        if (std::isfinite(mmx)) {
            for (std::size_t i = 0; i < n; ++i) ms += std::exp(mid[i] - mmx);
        }
        double log_mid = (ms > 0.0) ? mmx + std::log(ms) + std::log(hm) : quad_detail::kNegInf;
        log_cur = log_add(log_prev - std::numbers::ln2, log_mid);

        if (std::isinf(log_cur) && log_cur < 0 && std::isinf(log_prev) && log_prev < 0)
            return {quad_detail::kNegInf, 0.0, level};

        double rel = std::fabs(std::expm1(log_cur - log_prev));
        n *= 2;
        h = hm;
        if (level >= 2 && rel <= cfg.relative_tolerance) return {log_cur, rel, level};
        log_prev = log_cur;
    }
    throw QuadratureError("quadrature: tolerance not reached after max_refinements", log_cur, log_prev);
}

}  // namespace shrinkage
