#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "shrinkage/posterior.hpp"
#include "shrinkage/prior_family.hpp"
#include "shrinkage/rng.hpp"

// Seeded Monte Carlo studies of the risk, posterior-variance and contraction
// behavior of the Bayes estimates. Every report is a pure function of
// (prior, problem, rule, plan): replication r always uses substream r of the
// master seed and reductions run in replication order, so results are
// bit-identical for any worker count.

namespace shrinkage {

struct SparseMeanProblem {
    long long n = 0;
    long long p = 0;                 // nonzero budget (= actual nonzero count here)
    std::vector<long long> support;  // ascending indices of the nonzeros
    std::vector<double> signals;     // values on the support
    std::vector<double> theta0;      // the full mean vector, length n
};

struct SignalSpec {
    enum class Kind { Constant, Scaled } kind = Kind::Constant;
    double amplitude = 0.0;

    static SignalSpec constant(double a) { return {Kind::Constant, a}; }
    static SignalSpec scaled(double a) { return {Kind::Scaled, a}; }
    // Scaled signals sit at amplitude * sqrt(2 ln(n/p)).
    double value(long long n, long long p) const;
};

SparseMeanProblem generate_problem(long long n, long long p, SignalSpec signal, RngStream& rng);

struct TauRule {
    enum class Kind { Fixed, Power, DefaultLog, AAdapted } kind = Kind::DefaultLog;
    double value = 0.0;  // fixed tau, or the power exponent alpha (>= 1)

    static TauRule fixed(double tau) { return {Kind::Fixed, tau}; }
    static TauRule power(double alpha) { return {Kind::Power, alpha}; }
    static TauRule default_log() { return {Kind::DefaultLog, 0.0}; }
    static TauRule a_adapted() { return {Kind::AAdapted, 0.0}; }
    // "fixed:R" | "power:A" | "default-log" | "a-adapted"
    static TauRule parse(const std::string& text);
    std::string describe() const;
};

double select_tau(const TauRule& rule, long long n, long long p, double a);

struct ReplicationPlan {
    int reps = 100;
    std::uint64_t master_seed = 0;
    int posterior_draws = 1000;  // contraction studies
    bool add_noise = true;       // X = theta0 exactly when false (harness checks)
    int workers = 0;             // 0: SHRINKAGE_WORKERS env, then hardware
};

struct RiskReport {
    long long n = 0, p = 0;
    double tau = 0.0;
    std::optional<double> mc_risk, mc_se;
    std::optional<double> risk_nonzero, risk_zero;  // exact split of mc_risk
    std::optional<double> total_post_var, total_post_var_se;
    std::optional<double> minimax_ratio, thm31_ratio, thm32_ratio, thm35_ratio;
    std::vector<double> per_rep;  // one total per replication
};

RiskReport run_risk(const PriorFamily& prior, const SparseMeanProblem& problem,
                    const TauRule& rule, const ReplicationPlan& plan);

RiskReport run_total_variance(const PriorFamily& prior, const SparseMeanProblem& problem,
                              const TauRule& rule, const ReplicationPlan& plan);

struct ContractionReport {
    long long n = 0, p = 0;
    double tau = 0.0;
    double radius = 0.0;  // radius_multiplier * p * ln(n/p)
    double prob_true_center = 0.0, prob_true_se = 0.0;
    double prob_bayes_center = 0.0, prob_bayes_se = 0.0;
    std::vector<std::pair<double, double>> per_rep;  // (true-center, bayes-center)
};

ContractionReport run_contraction(const PriorFamily& prior, const SparseMeanProblem& problem,
                                  const TauRule& rule, const ReplicationPlan& plan,
                                  double radius_multiplier);

struct ScalingRow {
    long long n = 0, p = 0;
    double tau = 0.0, mc_risk = 0.0, mc_se = 0.0, minimax_ratio = 0.0;
};

struct ScalingTable {
    std::vector<ScalingRow> rows;
    double spread = 1.0;  // max/min of minimax_ratio across rows
};

ScalingTable run_scaling_study(const PriorFamily& prior, const std::vector<long long>& n_list,
                               const std::function<long long(long long)>& p_rule,
                               SignalSpec signal, const TauRule& rule,
                               const ReplicationPlan& plan);

}  // namespace shrinkage
