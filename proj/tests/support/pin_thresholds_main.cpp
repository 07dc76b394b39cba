// Prints the reference tables used to freeze test fixtures: closed-form
// anchors, bound-ratio ladders, and pinned posterior functionals. Run once,
// inspect, and copy the chosen constants into tests/support/fixtures.hpp.

#include <cmath>
#include <cstdio>
#include <numbers>

#include "oracle.hpp"

using oracle::KernelOracle;

namespace {

constexpr double kPi = std::numbers::pi;

void anchors() {
    auto hs = KernelOracle::horseshoe();
    std::printf("== horseshoe anchors (tau=1, x=0)\n");
    double g00 = std::exp(hs.log_G(0.0L, 0.0L, 0.0L, 1.0L));
    double g01 = std::exp(hs.log_G(0.0L, 1.0L, 0.0L, 1.0L));
    std::printf("G(0,0)    = %.12f   (pi     = %.12f, diff %.3e)\n", g00, kPi, g00 - kPi);
    std::printf("G(0,1)    = %.12f   (pi/2   = %.12f, diff %.3e)\n", g01, kPi / 2, g01 - kPi / 2);
    std::printf("E[kappa]  = %.12f   (2/3    = %.12f)\n", hs.e_kappa(0.0L, 1.0L, 1), 2.0 / 3.0);
    std::printf("E[kappa2] = %.12f   (8/15   = %.12f)\n", hs.e_kappa(0.0L, 1.0L, 2), 8.0 / 15.0);
    std::printf("Var       = %.12f   (1/3    = %.12f)\n", hs.post_var(0.0L, 1.0L), 1.0 / 3.0);
    std::printf("E[1-k]    = %.12f\n\n", hs.e_omk(0.0L, 1.0L));
}

void moment_ratio_ladder() {
    auto hs = KernelOracle::horseshoe();
    const double K = 1.0 / kPi, M = 1.0, a = 0.5;
    const double g1 = K * M / (a * (1.0 - a));
    std::printf("== moment-bound ratio  E[1-k|x,tau] / (g1 e^{x^2/2} tau^{2a}),  g1=%.6f\n", g1);
    std::printf("%8s", "tau");
    for (double x : {0.0, 1.0, 2.0}) std::printf("      x=%.0f        ", x);
    std::printf("\n");
    for (double tau : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5}) {
        std::printf("%8.0e", tau);
        for (double x : {0.0, 1.0, 2.0}) {
            double e = hs.e_omk(x, tau);
            double bound = g1 * std::exp(x * x / 2.0) * tau;  // 2a = 1
            std::printf("  %.12f", e / bound);
        }
        std::printf("\n");
    }
    std::printf("\n");
}

void crossterm_ratio_ladder() {
    auto hs = KernelOracle::horseshoe();
    const double K = 1.0 / kPi, M = 1.0;
    std::printf("== variance cross-term ratio  J(x,tau) / (2KM e^{x^2/2} tau^{2a})\n");
    std::printf("%8s", "tau");
    for (double x : {1.0, 2.0}) std::printf("      x=%.0f        ", x);
    std::printf("\n");
    for (double tau : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5}) {
        std::printf("%8.0e", tau);
        for (double x : {1.0, 2.0}) {
            double j = hs.J(x, tau);
            double bound = 2.0 * K * M * std::exp(x * x / 2.0) * tau;
            std::printf("  %.12f", j / bound);
        }
        std::printf("\n");
    }
    std::printf("\n");
}

void pinned_posteriors() {
    auto hs = KernelOracle::horseshoe();
    std::printf("== pinned posterior functionals (horseshoe)\n");
    double t20 = hs.post_mean(20.0L, 0.05L);
    std::printf("T(20; tau=0.05)              = %.17g   |T-20| = %.3e\n", t20, std::fabs(t20 - 20));
    std::printf("T(1; tau=1)                  = %.17g\n", hs.post_mean(1.0L, 1.0L));
    std::printf("E[1-k | 1, 1]                = %.17g\n", hs.e_omk(1.0L, 1.0L));
    double v20 = hs.post_var(20.0L, 0.05L);
    std::printf("Var(20; tau=0.05)            = %.17g   |V-1| = %.3e\n", v20, std::fabs(v20 - 1));
    std::printf("Pr(k>1/2 | x=0, tau=0.01)    = %.17g\n", hs.tail_prob(0.0L, 0.01L, 0.5L));
    double i12 = hs.log_Ik(0.5L, 2.0L, 0.1L);
    double i32 = hs.log_Ik(1.5L, 2.0L, 0.1L);
    double i52 = hs.log_Ik(2.5L, 2.0L, 0.1L);
    std::printf("I_{1/2}(y=2, tau=0.1)        = %.17g\n", std::exp(i12));
    std::printf("I_{3/2}(y=2, tau=0.1)        = %.17g\n", std::exp(i32));
    std::printf("I_{5/2}(y=2, tau=0.1)        = %.17g\n", std::exp(i52));
    double r52 = std::exp(hs.log_Ik(2.5L, 2.0L, 0.05L) - hs.log_Ik(0.5L, 2.0L, 0.05L));
    double r32 = std::exp(hs.log_Ik(1.5L, 2.0L, 0.05L) - hs.log_Ik(0.5L, 2.0L, 0.05L));
    std::printf("2y[I52/I12-(I32/I12)^2] (y=2,tau=0.05) = %.17g\n", 4.0 * (r52 - r32 * r32));
    std::printf("|T(30;1)-30|   = %.17g\n", std::fabs(hs.post_mean(30.0L, 1.0L) - 30));
    std::printf("|T(30;0.1)-30| = %.17g\n", std::fabs(hs.post_mean(30.0L, 0.1L) - 30));
    std::printf("T(3; tau=0.01)               = %.17g\n", hs.post_mean(3.0L, 0.01L));
    std::printf("\n");
}

void concentration_pieces() {
    auto hs = KernelOracle::horseshoe();
    std::printf("== concentration-bound pieces (horseshoe)\n");
    const double K = 1.0 / kPi, a = 0.5;
    for (double tau : {1e-1, 1e-2, 1e-3, 1e-4}) {
        for (auto [eta, delta] : {std::pair{5.0 / 6.0, 0.2}, std::pair{0.5, 0.5}}) {
            long double tstar = (1.0L / (eta * delta) - 1.0L) / (tau * tau);
            double logT = hs.log_tail_integral(logl(tstar));
            double log_xi = logT + std::log(a + 0.5) + (a + 0.5) * static_cast<double>(logl(tstar)) -
                            static_cast<double>(oracle::hs_logL(logl(tstar)));
            double log_Delta = log_xi + static_cast<double>(oracle::hs_logL(logl(tstar)));
            double H = (a + 0.5) * std::pow(1.0 - eta * delta, a) /
                       (K * std::pow(eta * delta, a + 0.5));
            std::printf("tau=%5.0e eta=%.4f delta=%.2f: Delta=%.12f xi=%.9f H=%.9f\n", tau, eta,
                        delta, std::exp(log_Delta), std::exp(log_xi), H);
            if (eta == 0.5 && delta == 0.5 && tau == 1e-2) {
                double bound = H * std::exp(-eta * (1 - delta) * 0.0 / 2.0) /
                               (std::pow(tau, 2 * a) * std::exp(log_Delta));
                std::printf("   bound(x=0, tau=0.01, 1/2, 1/2) = %.12f ; Pr = %.12f\n", bound,
                            hs.tail_prob(0.0L, 0.01L, 0.5L));
            }
        }
    }
    std::printf("\n");
}

void tpbn_and_ig_anchors() {
    std::printf("== other family anchors\n");
    auto sb = KernelOracle::tpbn(0.5L, 1.0L);
    double norm = std::exp(sb.log_G(0.0L, 0.0L, 0.0L, 1.0L));
    std::printf("tpbn(1/2,1): integral t^{-3/2}L = %.12f  (B(1/2,1) = 2)\n", norm);
    auto sb2 = KernelOracle::tpbn(0.5L, 2.0L);
    double norm2 = std::exp(sb2.log_G(0.0L, 0.0L, 0.0L, 1.0L));
    std::printf("tpbn(1/2,2): integral = %.12f  (B(1/2,2) = %.12f)\n", norm2,
                std::exp(std::lgamma(0.5) + std::lgamma(2.0) - std::lgamma(2.5)));
    auto ig = KernelOracle::inv_gamma(0.5L, 1.0L);
    double normig = std::exp(ig.log_G(0.0L, 0.0L, 0.0L, 1.0L));
    std::printf("inverse_gamma(1/2,1): integral = %.12f  (Gamma(1/2)/1 = %.12f)\n", normig,
                std::sqrt(kPi));
    std::printf("\n");
}

}  // namespace

int main() {
    anchors();
    tpbn_and_ig_anchors();
    moment_ratio_ladder();
    crossterm_ratio_ladder();
    pinned_posteriors();
    concentration_pieces();
    return 0;
}
