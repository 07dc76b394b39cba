#include "shrinkage/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "shrinkage/bounds.hpp"
#include "shrinkage/experiments.hpp"
#include "shrinkage/posterior.hpp"
#include "shrinkage/prior_family.hpp"
#include "shrinkage/version.hpp"

namespace shrinkage::cli {

namespace {

// All numeric output carries 15 significant digits, '.' decimal separator,
// no locale dependence.
std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return buf;
}

std::string fmt(long long v) { return std::to_string(v); }

struct OutFile {
    std::ofstream file;
    std::ostream* os = nullptr;

    explicit OutFile(const std::string& path) {
        if (path.empty() || path == "-") {
            os = &std::cout;
        } else {
            file.open(path, std::ios::trunc);
            if (!file) throw std::runtime_error("cannot open output file: " + path);
            os = &file;
        }
    }
    std::ostream& stream() { return *os; }
};

using ConfigEcho = std::vector<std::pair<std::string, std::string>>;

std::string meta_line(const std::string& command, const ConfigEcho& cfg,
                      std::optional<std::uint64_t> seed) {
    std::ostringstream os;
    os << "# shrinkage " << kVersion << " | " << command;
    for (const auto& [k, v] : cfg) os << " --" << k << "=" << v;
    if (seed) os << " | master_seed=" << *seed;
    return os.str();
}

void write_json_report(std::ostream& os, const std::string& command, const ConfigEcho& cfg,
                       std::uint64_t seed,
                       const std::vector<std::pair<std::string, std::string>>& fields) {
    os << "{\n";
    os << "  \"meta\": {\"tool\": \"shrinkage\", \"version\": \"" << kVersion
       << "\", \"command\": \"" << command << "\", \"master_seed\": " << seed << ", \"config\": {";
    for (std::size_t i = 0; i < cfg.size(); ++i) {
        if (i) os << ", ";
        os << "\"" << cfg[i].first << "\": \"" << cfg[i].second << "\"";
    }
    os << "}},\n";
    for (std::size_t i = 0; i < fields.size(); ++i) {
        os << "  \"" << fields[i].first << "\": " << fields[i].second;
        os << (i + 1 < fields.size() ? ",\n" : "\n");
    }
    os << "}\n";
}

std::vector<double> parse_csv_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) out.push_back(std::stod(tok));
    }
    if (out.empty()) throw CLI::ValidationError("empty list: " + text);
    return out;
}

// "lo:hi:step" inclusive grid.
std::vector<double> parse_grid(const std::string& text) {
    double lo, hi, step;
    if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3 || step <= 0.0 || hi < lo)
        throw CLI::ValidationError("grid must be lo:hi:step with step > 0, got " + text);
    std::vector<double> out;
    for (int k = 0;; ++k) {
        double v = lo + step * k;
        if (v > hi + 1e-12 * std::max(1.0, std::fabs(hi))) break;
        out.push_back(v);
    }
    return out;
}

SignalSpec parse_signal(const std::string& text) {
    auto colon = text.find(':');
    std::string head = text.substr(0, colon);
    double v = (colon == std::string::npos) ? 0.0 : std::stod(text.substr(colon + 1));
    if (head == "const" || head == "constant") return SignalSpec::constant(v);
    if (head == "scaled") return SignalSpec::scaled(v);
    throw CLI::ValidationError("signal must be const:A or scaled:A, got " + text);
}

// --config FILE: JSON object whose keys mirror long flag names; explicit
// flags take precedence, so config values are appended only for flags that
// are absent from the command line.
std::vector<std::string> apply_config_file(const std::vector<std::string>& args) {
    // The flag is handled here (before CLI11) so it works in any position;
    // its tokens are stripped from the argument list afterwards.
    std::string path;
    std::vector<std::string> stripped;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
            ++i;
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
        } else {
            stripped.push_back(args[i]);
        }
    }
    if (path.empty()) return stripped;
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    nlohmann::json j = nlohmann::json::parse(in);
    if (!j.is_object()) throw std::runtime_error("config file must hold a JSON object");

    auto present = [&](const std::string& key) {
        std::string flag = "--" + key;
        for (const auto& a : stripped)
            if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
        return false;
    };

    std::vector<std::string> out = stripped;
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (it.key() == "config" || present(it.key())) continue;
        std::string val;
        if (it->is_string()) val = it->get<std::string>();
        else val = it->dump();
        out.push_back("--" + it.key() + "=" + val);
    }
    return out;
}

// ---------------------------------------------------------------------------
// subcommand payloads
// ---------------------------------------------------------------------------

int cmd_priors_list(const std::string& out_path) {
    OutFile out(out_path);
    out.stream() << meta_line("priors list", {}, std::nullopt) << "\n";
    out.stream() << "name,a,K,M,c0,t0,nondecreasing,in_theorem_range\n";
    for (const auto& f : registry()) {
        const auto& sv = f.local_density;
        out.stream() << f.name << "," << fmt(f.exponent_a) << "," << fmt(f.normalizer_K) << ","
                     << fmt(sv.upper_bound_M) << "," << fmt(sv.lower_c0) << ","
                     << fmt(sv.lower_t0) << "," << (sv.nondecreasing ? 1 : 0) << ","
                     << (f.in_theorem_range ? 1 : 0) << "\n";
    }
    return 0;
}

int cmd_estimate(const PriorFamily& prior, double tau, const std::string& in_path,
                 const std::string& out_path, const ConfigEcho& cfg) {
    if (!prior.in_theorem_range)
        std::cerr << "warning: " << prior.name << " has a outside [1/2,1); theorem-range results "
                  << "do not apply\n";
    PosteriorContext ctx{prior, tau, {}};
    std::ifstream file;
    std::istream* is = &std::cin;
    if (!in_path.empty() && in_path != "-") {
        file.open(in_path);
        if (!file) throw std::runtime_error("cannot open input file: " + in_path);
        is = &file;
    }
    OutFile out(out_path);
    out.stream() << meta_line("estimate", cfg, std::nullopt) << "\n";
    out.stream() << "x,t_tau,post_var,identity_gap\n";
    std::string line;
    while (std::getline(*is, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        double x = std::stod(line);
        double t = posterior_mean(ctx, x);
        PosteriorVariance pv = posterior_variance(ctx, x);
        out.stream() << fmt(x) << "," << fmt(t) << "," << fmt(pv.value) << ","
                     << fmt(pv.identity_gap) << "\n";
    }
    return 0;
}

struct BoundRow {
    std::string suite;
    double tau, x_or_y, lhs, rhs;
    bool pass;
};

// Uniform convention: rows are oriented so the claim reads lhs <= rhs;
// margin = lhs/rhs, pass = lhs <= rhs * (1+slack) with a small quadrature
// slack for the exact inequalities.
int cmd_verify_bounds(const PriorFamily& prior, const std::string& suite,
                      const std::vector<double>& tau_grid, const std::vector<double>& grid,
                      double eta, double delta, const std::string& out_path,
                      const ConfigEcho& cfg) {
    const double slack = 1e-9;
    std::vector<BoundRow> rows;

    for (double tau : tau_grid) {
        PosteriorContext ctx{prior, tau, {}};
        if (suite == "moment") {
            for (double x : grid) {
                double lhs = one_minus_kappa_mean(ctx, x);
                double rhs = std::exp(moment_bound(prior, x, tau).log_value);
                rows.push_back({suite, tau, x, lhs, rhs, lhs <= rhs * (1.0 + slack)});
            }
        } else if (suite == "concentration") {
            ConcentrationBound cb(prior, tau, {eta, delta});
            for (double x : grid) {
                double lhs = kappa_tail_prob(ctx, x, eta);
                double rhs = std::exp(cb.log_bound(x));
                rows.push_back({suite, tau, x, lhs, rhs, lhs <= rhs * (1.0 + slack)});
            }
        } else if (suite == "gap") {
            GapEnvelope env = gap_envelope(prior, {eta, delta});
            ConcentrationBound cb(prior, tau, {eta, delta});
            for (double x : grid) {
                double lhs = std::fabs(posterior_mean(ctx, x) - x);
                double h2 = (x == 0.0) ? 0.0 : std::exp(std::log(std::fabs(x)) + cb.log_bound(x));
                double rhs = env.h1(x) + h2;
                rows.push_back({suite, tau, x, lhs, rhs, lhs <= rhs * (1.0 + slack)});
            }
        } else if (suite == "variance-ub") {
            for (double x : grid) {
                double num = kernel_integral(ctx, 2.0, 2.5, x).log_value;
                double den = kernel_integral(ctx, 0.0, 0.5, x).log_value;
                double lhs = x * x * std::exp(num - den);
                double rhs = std::exp(variance_crossterm_bound(prior, x, tau).log_value);
                rows.push_back({suite, tau, x, lhs, rhs, lhs <= rhs * (1.0 + slack)});
            }
        } else if (suite == "variance-lb") {
            for (double y : grid) {
                if (!(y > 0.0)) continue;
                double lhs = variance_lower_expression(prior, y, tau);
                double rhs = posterior_variance(ctx, std::sqrt(2.0 * y)).value;
                rows.push_back({suite, tau, y, lhs, rhs, lhs <= rhs * (1.0 + slack)});
            }
        } else if (suite == "ik") {
            for (double y : grid) {
                if (!(y > 0.0)) continue;
                IkBounds b = ik_bounds(prior, y, tau);
                double i12 = ik_integral(prior, 0.5, y, tau).value();
                double i32 = ik_integral(prior, 1.5, y, tau).value();
                double i52 = ik_integral(prior, 2.5, y, tau).value();
                if (b.lower_i52)
                    rows.push_back({"ik-lb52", tau, y, *b.lower_i52, i52,
                                    *b.lower_i52 <= i52 * (1.0 + slack)});
                if (b.upper_i12)
                    rows.push_back({"ik-ub12", tau, y, i12, *b.upper_i12,
                                    i12 <= *b.upper_i12 * (1.0 + slack)});
                if (b.upper_i32)
                    rows.push_back({"ik-ub32", tau, y, i32, *b.upper_i32,
                                    i32 <= *b.upper_i32 * (1.0 + slack)});
                if (b.lower_i12)
                    rows.push_back({"ik-lb12", tau, y, *b.lower_i12, i12,
                                    *b.lower_i12 <= i12 * (1.0 + slack)});
            }
        } else {
            throw CLI::ValidationError("unknown suite: " + suite);
        }
    }

    OutFile out(out_path);
    out.stream() << meta_line("verify-bounds", cfg, std::nullopt) << "\n";
    out.stream() << "suite,tau,x_or_y,lhs,rhs,margin,pass\n";
    bool all_pass = true;
    for (const auto& r : rows) {
        double margin = (r.rhs != 0.0) ? r.lhs / r.rhs : std::numeric_limits<double>::infinity();
        out.stream() << r.suite << "," << fmt(r.tau) << "," << fmt(r.x_or_y) << "," << fmt(r.lhs)
                     << "," << fmt(r.rhs) << "," << fmt(margin) << "," << (r.pass ? 1 : 0) << "\n";
        all_pass = all_pass && r.pass;
    }
    return all_pass ? 0 : 1;
}

void write_risk_json(std::ostream& os, const std::string& command, const ConfigEcho& cfg,
                     std::uint64_t seed, const RiskReport& r) {
    std::vector<std::pair<std::string, std::string>> fields;
    fields.emplace_back("n", fmt(r.n));
    fields.emplace_back("p", fmt(r.p));
    fields.emplace_back("tau", fmt(r.tau));
    auto opt = [&](const char* k, const std::optional<double>& v) {
        if (v) fields.emplace_back(k, fmt(*v));
    };
    opt("mc_risk", r.mc_risk);
    opt("mc_se", r.mc_se);
    opt("risk_nonzero", r.risk_nonzero);
    opt("risk_zero", r.risk_zero);
    opt("total_post_var", r.total_post_var);
    opt("total_post_var_se", r.total_post_var_se);
    opt("minimax_ratio", r.minimax_ratio);
    opt("thm31_ratio", r.thm31_ratio);
    opt("thm32_ratio", r.thm32_ratio);
    opt("thm35_ratio", r.thm35_ratio);
    write_json_report(os, command, cfg, seed, fields);
}

void write_per_rep_csv(const std::string& path, const std::string& command, const ConfigEcho& cfg,
                       std::uint64_t seed, const std::vector<double>& per_rep) {
    if (path.empty()) return;
    OutFile out(path);
    out.stream() << meta_line(command, cfg, seed) << "\n";
    out.stream() << "rep,total\n";
    for (std::size_t r = 0; r < per_rep.size(); ++r)
        out.stream() << r << "," << fmt(per_rep[r]) << "\n";
}

}  // namespace

int dispatch(int argc, const char* const* argv) {
    CLI::App app{"heavy-tailed shrinkage priors for sparse normal means: estimation, bound "
                 "verification, and Monte Carlo studies"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "JSON file whose keys mirror long flags")
        ->expected(1);
    app.set_help_all_flag("--help-all");

    // priors list
    auto* priors = app.add_subcommand("priors", "prior-family registry utilities");
    auto* priors_list = priors->add_subcommand("list", "emit the registry as CSV");
    std::string pl_out = "-";
    priors_list->add_option("--out", pl_out, "output file, - for stdout");

    // estimate
    auto* est = app.add_subcommand("estimate", "posterior mean and variance per observation");
    std::string est_prior = "horseshoe", est_in = "-", est_out = "-";
    double est_tau = 1.0;
    est->add_option("--prior", est_prior, "NAME[:params]")->required();
    est->add_option("--tau", est_tau, "global shrinkage parameter")->required();
    est->add_option("--in", est_in, "input file of observations, one per line; - for stdin");
    est->add_option("--out", est_out, "output CSV; - for stdout");

    // verify-bounds
    auto* vb = app.add_subcommand("verify-bounds", "compare closed-form bounds with quadrature");
    std::string vb_prior = "horseshoe", vb_suite, vb_taus, vb_grid = "-10:10:0.5", vb_out = "-";
    double vb_eta = 5.0 / 6.0, vb_delta = 0.2;
    vb->add_option("--prior", vb_prior)->required();
    vb->add_option("--suite", vb_suite, "moment|concentration|gap|variance-ub|variance-lb|ik")
        ->required();
    vb->add_option("--tau-grid", vb_taus, "comma-separated tau values")->required();
    vb->add_option("--x-grid", vb_grid, "lo:hi:step (y values for variance-lb and ik)");
    vb->add_option("--eta", vb_eta, "concentration eta");
    vb->add_option("--delta", vb_delta, "concentration delta");
    vb->add_option("--out", vb_out);

    // shared experiment flags
    struct ExpFlags {
        std::string prior = "horseshoe", signal = "const:0", tau_rule, out = "-", plot_out;
        long long n = 0, p = 0;
        int reps = 100, draws = 1000;
        std::uint64_t seed = 0;
    };
    auto add_shared = [](CLI::App* cmd, ExpFlags& f, bool needs_problem) {
        cmd->add_option("--prior", f.prior)->required();
        if (needs_problem) {
            cmd->add_option("--n", f.n)->required();
            cmd->add_option("--p", f.p)->required();
            cmd->add_option("--signal", f.signal, "const:A or scaled:A");
        }
        cmd->add_option("--tau-rule", f.tau_rule, "fixed:R|power:A|default-log|a-adapted")
            ->required();
        cmd->add_option("--reps", f.reps);
        cmd->add_option("--seed", f.seed);
        cmd->add_option("--out", f.out, "JSON report; - for stdout");
        cmd->add_option("--plot-out", f.plot_out, "per-replication CSV");
    };

    auto* risk = app.add_subcommand("risk", "Monte Carlo L2 risk of the Bayes estimate");
    ExpFlags rf;
    add_shared(risk, rf, true);
    bool rf_variance = false;
    risk->add_flag("--total-variance", rf_variance,
                   "accumulate posterior variances instead of squared errors");

    auto* contract = app.add_subcommand("contract", "posterior contraction probabilities");
    ExpFlags cf;
    add_shared(contract, cf, true);
    double cf_radius = 10.0;
    contract->add_option("--radius-mult", cf_radius, "M in radius M p ln(n/p)");
    contract->add_option("--draws", cf.draws, "posterior draws per replication");

    auto* scaling = app.add_subcommand("scaling", "risk stability across n");
    ExpFlags sf;
    std::string sf_nlist;
    double sf_gamma = 0.25;
    scaling->add_option("--prior", sf.prior)->required();
    scaling->add_option("--n-list", sf_nlist, "comma-separated n values")->required();
    scaling->add_option("--gamma", sf_gamma, "p = ceil(n^gamma)");
    scaling->add_option("--signal", sf.signal);
    scaling->add_option("--tau-rule", sf.tau_rule)->required();
    scaling->add_option("--reps", sf.reps);
    scaling->add_option("--seed", sf.seed);
    scaling->add_option("--out", sf.out);
    scaling->add_option("--plot-out", sf.plot_out);

    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    try {
        args = apply_config_file(args);
        std::vector<const char*> cargs;
        cargs.push_back(argc > 0 ? argv[0] : "shrinkage");
        for (const auto& a : args) cargs.push_back(a.c_str());
        app.parse(static_cast<int>(cargs.size()), cargs.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n\n" << app.help() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }

    try {
        if (priors_list->parsed()) return cmd_priors_list(pl_out);

        if (est->parsed()) {
            ConfigEcho cfg{{"prior", est_prior}, {"tau", fmt(est_tau)}, {"in", est_in}};
            return cmd_estimate(parse_prior_spec(est_prior), est_tau, est_in, est_out, cfg);
        }

        if (vb->parsed()) {
            ConfigEcho cfg{{"prior", vb_prior},   {"suite", vb_suite}, {"tau-grid", vb_taus},
                           {"x-grid", vb_grid},   {"eta", fmt(vb_eta)}, {"delta", fmt(vb_delta)}};
            return cmd_verify_bounds(parse_prior_spec(vb_prior), vb_suite, parse_csv_list(vb_taus),
                                     parse_grid(vb_grid), vb_eta, vb_delta, vb_out, cfg);
        }

        if (risk->parsed()) {
            PriorFamily prior = parse_prior_spec(rf.prior);
            if (!prior.in_theorem_range)
                std::cerr << "warning: " << prior.name << " is outside the theorem range a in "
                          << "[1/2,1)\n";
            RngStream prob_stream = RngStream(rf.seed).substream(0xBEEF);
            SparseMeanProblem problem =
                generate_problem(rf.n, rf.p, parse_signal(rf.signal), prob_stream);
            ReplicationPlan plan;
            plan.reps = rf.reps;
            plan.master_seed = rf.seed;
            TauRule rule = TauRule::parse(rf.tau_rule);
            RiskReport rep = rf_variance ? run_total_variance(prior, problem, rule, plan)
                                         : run_risk(prior, problem, rule, plan);
            ConfigEcho cfg{{"prior", rf.prior},       {"n", fmt(rf.n)},
                           {"p", fmt(rf.p)},          {"signal", rf.signal},
                           {"tau-rule", rf.tau_rule}, {"reps", fmt((long long)rf.reps)},
                           {"total-variance", rf_variance ? "1" : "0"}};
            OutFile out(rf.out);
            write_risk_json(out.stream(), "risk", cfg, rf.seed, rep);
            write_per_rep_csv(rf.plot_out, "risk", cfg, rf.seed, rep.per_rep);
            return 0;
        }

        if (contract->parsed()) {
            PriorFamily prior = parse_prior_spec(cf.prior);
            RngStream prob_stream = RngStream(cf.seed).substream(0xBEEF);
            SparseMeanProblem problem =
                generate_problem(cf.n, cf.p, parse_signal(cf.signal), prob_stream);
            ReplicationPlan plan;
            plan.reps = cf.reps;
            plan.master_seed = cf.seed;
            plan.posterior_draws = cf.draws;
            ContractionReport rep =
                run_contraction(prior, problem, TauRule::parse(cf.tau_rule), plan, cf_radius);
            ConfigEcho cfg{{"prior", cf.prior},       {"n", fmt(cf.n)},
                           {"p", fmt(cf.p)},          {"signal", cf.signal},
                           {"tau-rule", cf.tau_rule}, {"reps", fmt((long long)cf.reps)},
                           {"radius-mult", fmt(cf_radius)}, {"draws", fmt((long long)cf.draws)}};
            OutFile out(cf.out);
            std::vector<std::pair<std::string, std::string>> fields;
            fields.emplace_back("n", fmt(rep.n));
            fields.emplace_back("p", fmt(rep.p));
            fields.emplace_back("tau", fmt(rep.tau));
            fields.emplace_back("radius", fmt(rep.radius));
            fields.emplace_back("prob_true_center", fmt(rep.prob_true_center));
            fields.emplace_back("prob_true_se", fmt(rep.prob_true_se));
            fields.emplace_back("prob_bayes_center", fmt(rep.prob_bayes_center));
            fields.emplace_back("prob_bayes_se", fmt(rep.prob_bayes_se));
            write_json_report(out.stream(), "contract", cfg, cf.seed, fields);
            if (!cf.plot_out.empty()) {
                OutFile plot(cf.plot_out);
                plot.stream() << meta_line("contract", cfg, cf.seed) << "\n";
                plot.stream() << "rep,prob_true_center,prob_bayes_center\n";
                for (std::size_t r = 0; r < rep.per_rep.size(); ++r)
                    plot.stream() << r << "," << fmt(rep.per_rep[r].first) << ","
                                  << fmt(rep.per_rep[r].second) << "\n";
            }
            return 0;
        }

        if (scaling->parsed()) {
            PriorFamily prior = parse_prior_spec(sf.prior);
            std::vector<double> ns = parse_csv_list(sf_nlist);
            std::vector<long long> n_list(ns.begin(), ns.end());
            ReplicationPlan plan;
            plan.reps = sf.reps;
            plan.master_seed = sf.seed;
            double gamma = sf_gamma;
            ScalingTable table = run_scaling_study(
                prior, n_list,
                [gamma](long long n) {
                    return static_cast<long long>(std::ceil(std::pow(static_cast<double>(n), gamma)));
                },
                parse_signal(sf.signal), TauRule::parse(sf.tau_rule), plan);
            ConfigEcho cfg{{"prior", sf.prior},       {"n-list", sf_nlist},
                           {"gamma", fmt(sf_gamma)},  {"signal", sf.signal},
                           {"tau-rule", sf.tau_rule}, {"reps", fmt((long long)sf.reps)}};
            OutFile out(sf.out);
            std::vector<std::pair<std::string, std::string>> fields;
            fields.emplace_back("spread", fmt(table.spread));
            std::ostringstream rows;
            rows << "[";
            for (std::size_t k = 0; k < table.rows.size(); ++k) {
                const auto& row = table.rows[k];
                if (k) rows << ", ";
                rows << "{\"n\": " << fmt(row.n) << ", \"p\": " << fmt(row.p)
                     << ", \"tau\": " << fmt(row.tau) << ", \"mc_risk\": " << fmt(row.mc_risk)
                     << ", \"mc_se\": " << fmt(row.mc_se)
                     << ", \"minimax_ratio\": " << fmt(row.minimax_ratio) << "}";
            }
            rows << "]";
            fields.emplace_back("rows", rows.str());
            write_json_report(out.stream(), "scaling", cfg, sf.seed, fields);
            if (!sf.plot_out.empty()) {
                OutFile plot(sf.plot_out);
                plot.stream() << meta_line("scaling", cfg, sf.seed) << "\n";
                plot.stream() << "n,p,tau,mc_risk,mc_se,minimax_ratio\n";
                for (const auto& row : table.rows)
                    plot.stream() << row.n << "," << row.p << "," << fmt(row.tau) << ","
                                  << fmt(row.mc_risk) << "," << fmt(row.mc_se) << ","
                                  << fmt(row.minimax_ratio) << "\n";
            }
            return 0;
        }

        std::cerr << "usage error: no subcommand\n" << app.help() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace shrinkage::cli
