#include "shrinkage/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "shrinkage/parallel.hpp"

namespace shrinkage {

namespace {

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double se_of(const std::vector<double>& v, double mean) {
    if (v.size() < 2) return 0.0;
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    double sd = std::sqrt(ss / static_cast<double>(v.size() - 1));
    return sd / std::sqrt(static_cast<double>(v.size()));
}

[[noreturn]] void rethrow_with_site(const std::exception& e, std::size_t rep, long long coord) {
    throw std::runtime_error("replication " + std::to_string(rep) + ", coordinate " +
                             std::to_string(coord) + ": " + e.what());
}

// Rate expressions with p = 0 admitted (pure-noise studies).
double thm31_rate_raw(long long n, long long p, double tau, double a) {
    double li = 2.0 * a * std::log(1.0 / tau);
    return static_cast<double>(p) * li +
           static_cast<double>(n - p) * std::pow(tau, 2.0 * a) * std::sqrt(li);
}

double thm32_rate_raw(long long n, long long p, double tau, double a) {
    double li = 2.0 * a * std::log(1.0 / tau);
    return static_cast<double>(p) +
           static_cast<double>(n - p) * std::pow(tau, 2.0 * a) * std::sqrt(li);
}

double thm35_rate_raw(long long n, long long p, double tau) {
    return static_cast<double>(n - p) * tau * std::sqrt(std::log(1.0 / tau));
}

}  // namespace

double SignalSpec::value(long long n, long long p) const {
    if (kind == Kind::Constant) return amplitude;
    if (p <= 0 || p >= n) throw std::invalid_argument("SignalSpec: scaled needs 0 < p < n");
    return amplitude * std::sqrt(2.0 * std::log(static_cast<double>(n) / static_cast<double>(p)));
}

SparseMeanProblem generate_problem(long long n, long long p, SignalSpec signal, RngStream& rng) {
    if (n <= 0) throw std::invalid_argument("generate_problem: n must be positive");
    if (p < 0 || p >= n) throw std::invalid_argument("generate_problem: requires 0 <= p < n");
    SparseMeanProblem prob;
    prob.n = n;
    prob.p = p;
    prob.theta0.assign(static_cast<std::size_t>(n), 0.0);
    if (p == 0) return prob;

    // Partial Fisher-Yates draw of p indices without replacement.
    std::vector<long long> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), 0);
    for (long long k = 0; k < p; ++k) {
        long long j = k + static_cast<long long>(rng.next_uniform() * static_cast<double>(n - k));
        std::swap(idx[static_cast<std::size_t>(k)], idx[static_cast<std::size_t>(j)]);
    }
    prob.support.assign(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(p));
    std::sort(prob.support.begin(), prob.support.end());
    double amp = signal.value(n, p);
    prob.signals.assign(static_cast<std::size_t>(p), amp);
    for (long long s : prob.support) prob.theta0[static_cast<std::size_t>(s)] = amp;
    return prob;
}

TauRule TauRule::parse(const std::string& text) {
    if (text == "default-log" || text == "default_log") return default_log();
    if (text == "a-adapted" || text == "a_adapted") return a_adapted();
    auto colon = text.find(':');
    if (colon != std::string::npos) {
        std::string head = text.substr(0, colon);
        double v = std::stod(text.substr(colon + 1));
        if (head == "fixed") return fixed(v);
        if (head == "power") return power(v);
    }
    throw std::invalid_argument("tau rule must be fixed:R | power:A | default-log | a-adapted, got '" +
                                text + "'");
}

std::string TauRule::describe() const {
    switch (kind) {
        case Kind::Fixed: return "fixed:" + std::to_string(value);
        case Kind::Power: return "power:" + std::to_string(value);
        case Kind::DefaultLog: return "default-log";
        case Kind::AAdapted: return "a-adapted";
    }
    return "?";
}

double select_tau(const TauRule& rule, long long n, long long p, double a) {
    double tau = 0.0;
    if (rule.kind == TauRule::Kind::Fixed) {
        tau = rule.value;
    } else {
        if (p <= 0 || p >= n) throw std::out_of_range("select_tau: requires 0 < p < n");
        double frac = static_cast<double>(p) / static_cast<double>(n);
        double log_np = std::log(static_cast<double>(n) / static_cast<double>(p));
        switch (rule.kind) {
            case TauRule::Kind::Power:
                if (!(rule.value >= 1.0))
                    throw std::invalid_argument("select_tau: power rule needs alpha >= 1");
                tau = std::pow(frac, rule.value);
                break;
            case TauRule::Kind::DefaultLog:
                tau = frac * std::sqrt(log_np);
                break;
            case TauRule::Kind::AAdapted: {
                double base = frac * std::sqrt(log_np);
                double e = 1.0 / (2.0 * a);
                tau = (e == 1.0) ? base : std::pow(base, e);
                break;
            }
            default: break;
        }
    }
    if (!(tau > 0.0) || !(tau < 1.0))
        throw std::out_of_range("select_tau: resulting tau = " + std::to_string(tau) +
                                " outside (0,1)");
    return tau;
}

namespace {

struct RepAccumulator {
    std::vector<double> zero_part, nonzero_part;
};

// Shared driver: per replication draw X ~ N(theta0, I) with substream r and
// accumulate a per-coordinate functional split by support membership.
template <class PerCoord>
RepAccumulator run_replications(const SparseMeanProblem& problem, const ReplicationPlan& plan,
                                const PerCoord& per_coord) {
    RepAccumulator acc;
    std::size_t reps = static_cast<std::size_t>(plan.reps);
    acc.zero_part.assign(reps, 0.0);
    acc.nonzero_part.assign(reps, 0.0);
    RngStream master(plan.master_seed);
    parallel_for(reps, plan.workers, [&](std::size_t r) {
        RngStream rep = master.substream(r);
        RngStream noise = rep.substream(0);
        double zero_sum = 0.0, nonzero_sum = 0.0;
        for (long long i = 0; i < problem.n; ++i) {
            double th = problem.theta0[static_cast<std::size_t>(i)];
            double x = th + (plan.add_noise ? noise.next_normal() : 0.0);
            double contrib;
            try {
                contrib = per_coord(x, th);
            } catch (const QuadratureError& e) {
                rethrow_with_site(e, r, i);
            } catch (const std::runtime_error& e) {
                rethrow_with_site(e, r, i);
            }
            (th != 0.0 ? nonzero_sum : zero_sum) += contrib;
        }
        acc.zero_part[r] = zero_sum;
        acc.nonzero_part[r] = nonzero_sum;
    });
    return acc;
}

}  // namespace

RiskReport run_risk(const PriorFamily& prior, const SparseMeanProblem& problem,
                    const TauRule& rule, const ReplicationPlan& plan) {
    if (plan.reps < 1) throw std::invalid_argument("run_risk: reps must be >= 1");
    double tau = select_tau(rule, problem.n, problem.p, prior.exponent_a);
    PosteriorContext ctx{prior, tau, {}};

    auto acc = run_replications(problem, plan, [&](double x, double th) {
        double d = posterior_mean(ctx, x) - th;
        return d * d;
    });

    RiskReport rep;
    rep.n = problem.n;
    rep.p = problem.p;
    rep.tau = tau;
    rep.per_rep.resize(acc.zero_part.size());
    for (std::size_t r = 0; r < rep.per_rep.size(); ++r)
        rep.per_rep[r] = acc.zero_part[r] + acc.nonzero_part[r];
    double risk = mean_of(rep.per_rep);
    rep.mc_risk = risk;
    rep.mc_se = se_of(rep.per_rep, risk);
    rep.risk_zero = mean_of(acc.zero_part);
    rep.risk_nonzero = mean_of(acc.nonzero_part);

    const double a = prior.exponent_a;
    if (problem.p > 0) {
        double minimax = 2.0 * static_cast<double>(problem.p) *
                         std::log(static_cast<double>(problem.n) / static_cast<double>(problem.p));
        rep.minimax_ratio = risk / minimax;
    }
    rep.thm31_ratio = risk / thm31_rate_raw(problem.n, problem.p, tau, a);
    return rep;
}

RiskReport run_total_variance(const PriorFamily& prior, const SparseMeanProblem& problem,
                              const TauRule& rule, const ReplicationPlan& plan) {
    if (plan.reps < 1) throw std::invalid_argument("run_total_variance: reps must be >= 1");
    double tau = select_tau(rule, problem.n, problem.p, prior.exponent_a);
    PosteriorContext ctx{prior, tau, {}};

    auto acc = run_replications(problem, plan,
                                [&](double x, double) { return posterior_variance(ctx, x).value; });

    RiskReport rep;
    rep.n = problem.n;
    rep.p = problem.p;
    rep.tau = tau;
    rep.per_rep.resize(acc.zero_part.size());
    for (std::size_t r = 0; r < rep.per_rep.size(); ++r)
        rep.per_rep[r] = acc.zero_part[r] + acc.nonzero_part[r];
    double total = mean_of(rep.per_rep);
    rep.total_post_var = total;
    rep.total_post_var_se = se_of(rep.per_rep, total);

    const double a = prior.exponent_a;
    rep.thm32_ratio = total / thm32_rate_raw(problem.n, problem.p, tau, a);
    if (std::fabs(a - 0.5) <= 1e-12 && prior.local_density.nondecreasing)
        rep.thm35_ratio = total / thm35_rate_raw(problem.n, problem.p, tau);
    if (problem.p > 0) {
        double minimax = 2.0 * static_cast<double>(problem.p) *
                         std::log(static_cast<double>(problem.n) / static_cast<double>(problem.p));
        rep.minimax_ratio = total / minimax;
    }
    return rep;
}

ContractionReport run_contraction(const PriorFamily& prior, const SparseMeanProblem& problem,
                                  const TauRule& rule, const ReplicationPlan& plan,
                                  double radius_multiplier) {
    if (plan.reps < 1) throw std::invalid_argument("run_contraction: reps must be >= 1");
    if (plan.posterior_draws < 1000)
        throw std::invalid_argument("run_contraction: posterior_draws must be >= 1000");
    if (problem.p <= 0) throw std::invalid_argument("run_contraction: requires p >= 1");
    if (!(radius_multiplier >= 0.0))
        throw std::invalid_argument("run_contraction: radius multiplier must be >= 0");
    double tau = select_tau(rule, problem.n, problem.p, prior.exponent_a);
    PosteriorContext ctx{prior, tau, {}};
    double radius = radius_multiplier * static_cast<double>(problem.p) *
                    std::log(static_cast<double>(problem.n) / static_cast<double>(problem.p));

    std::size_t reps = static_cast<std::size_t>(plan.reps);
    std::size_t draws = static_cast<std::size_t>(plan.posterior_draws);
    std::vector<std::pair<double, double>> per_rep(reps);
    RngStream master(plan.master_seed);

    parallel_for(reps, plan.workers, [&](std::size_t r) {
        RngStream rep = master.substream(r);
        RngStream noise = rep.substream(0);
        std::vector<double> x(static_cast<std::size_t>(problem.n));
        for (long long i = 0; i < problem.n; ++i)
            x[static_cast<std::size_t>(i)] =
                problem.theta0[static_cast<std::size_t>(i)] +
                (plan.add_noise ? noise.next_normal() : 0.0);

        std::vector<double> ssq_true(draws, 0.0), ssq_bayes(draws, 0.0);
        for (long long i = 0; i < problem.n; ++i) {
            double xi = x[static_cast<std::size_t>(i)];
            double th = problem.theta0[static_cast<std::size_t>(i)];
            try {
                KappaSampler sampler(ctx, xi);
                double t_i = posterior_mean(ctx, xi);
                RngStream ds = rep.substream(static_cast<std::uint64_t>(i) + 1);
                for (std::size_t j = 0; j < draws; ++j) {
                    double theta = sampler.draw_theta(ds);
                    double dt = theta - th;
                    double db = theta - t_i;
                    ssq_true[j] += dt * dt;
                    ssq_bayes[j] += db * db;
                }
            } catch (const std::runtime_error& e) {
                rethrow_with_site(e, r, i);
            }
        }
        std::size_t over_true = 0, over_bayes = 0;
        for (std::size_t j = 0; j < draws; ++j) {
            if (ssq_true[j] > radius) ++over_true;
            if (ssq_bayes[j] > radius) ++over_bayes;
        }
        per_rep[r] = {static_cast<double>(over_true) / static_cast<double>(draws),
                      static_cast<double>(over_bayes) / static_cast<double>(draws)};
    });

    ContractionReport out;
    out.n = problem.n;
    out.p = problem.p;
    out.tau = tau;
    out.radius = radius;
    out.per_rep = per_rep;
    std::vector<double> pt(reps), pb(reps);
    for (std::size_t r = 0; r < reps; ++r) {
        pt[r] = per_rep[r].first;
        pb[r] = per_rep[r].second;
    }
    out.prob_true_center = mean_of(pt);
    out.prob_true_se = se_of(pt, out.prob_true_center);
    out.prob_bayes_center = mean_of(pb);
    out.prob_bayes_se = se_of(pb, out.prob_bayes_center);
    return out;
}

ScalingTable run_scaling_study(const PriorFamily& prior, const std::vector<long long>& n_list,
                               const std::function<long long(long long)>& p_rule,
                               SignalSpec signal, const TauRule& rule,
                               const ReplicationPlan& plan) {
    if (n_list.empty()) throw std::invalid_argument("run_scaling_study: empty n list");
    ScalingTable table;
    RngStream master(plan.master_seed);
    for (std::size_t k = 0; k < n_list.size(); ++k) {
        long long n = n_list[k];
        long long p = p_rule(n);
        RngStream prob_stream = master.substream(0x9000 + k);
        SparseMeanProblem problem = generate_problem(n, p, signal, prob_stream);
        ReplicationPlan row_plan = plan;
        row_plan.master_seed = master.substream(0xA000 + k).next_u64();
        RiskReport rep = run_risk(prior, problem, rule, row_plan);
        ScalingRow row;
        row.n = n;
        row.p = p;
        row.tau = rep.tau;
        row.mc_risk = *rep.mc_risk;
        row.mc_se = *rep.mc_se;
        row.minimax_ratio = *rep.minimax_ratio;
        table.rows.push_back(row);
    }
    double lo = table.rows.front().minimax_ratio, hi = lo;
    for (const auto& row : table.rows) {
        lo = std::min(lo, row.minimax_ratio);
        hi = std::max(hi, row.minimax_ratio);
    }
    table.spread = hi / lo;
    return table;
}

}  // namespace shrinkage
