#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "shrinkage/cli.hpp"

namespace fs = std::filesystem;

namespace {

int run(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.push_back("shrinkage");
    for (const auto& a : args) argv.push_back(a.c_str());
    return shrinkage::cli::dispatch(static_cast<int>(argv.size()), argv.data());
}

fs::path tmp_dir() {
    fs::path d = fs::temp_directory_path() / "shrinkage_cli_test";
    fs::create_directories(d);
    return d;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> lines_of(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string line;
    while (std::getline(ss, line)) out.push_back(line);
    return out;
}

}  // namespace

TEST_CASE("priors list emits the registry as CSV") {
    fs::path out = tmp_dir() / "registry.csv";
    CHECK(run({"priors", "list", "--out", out.string()}) == 0);
    auto lines = lines_of(slurp(out));
    REQUIRE(lines.size() >= 3);
    CHECK(lines[0].rfind("# shrinkage", 0) == 0);
    CHECK(lines[1] == "name,a,K,M,c0,t0,nondecreasing,in_theorem_range");
    CHECK(lines[2].rfind("horseshoe,0.5,", 0) == 0);
    CHECK(lines.size() == 2 + 6);  // six registry rows
}

TEST_CASE("estimate matches the variance anchor exactly as text") {
    fs::path in = tmp_dir() / "obs.txt";
    {
        std::ofstream f(in);
        f << "0\n2.5\n-2.5\n";
    }
    fs::path out = tmp_dir() / "est.csv";
    CHECK(run({"estimate", "--prior", "horseshoe", "--tau", "1", "--in", in.string(), "--out",
               out.string()}) == 0);
    auto lines = lines_of(slurp(out));
    REQUIRE(lines.size() == 5);
    CHECK(lines[1] == "x,t_tau,post_var,identity_gap");
    CHECK(lines[2].rfind("0,0,0.333333333333333,", 0) == 0);
    // Odd symmetry shows up in the emitted text as a sign flip.
    CHECK(lines[3].substr(lines[3].find(',')) ==
          "," + lines[4].substr(lines[4].find(',') + 2));  // skip "-"
}

TEST_CASE("verify-bounds gap suite passes and exits 0") {
    fs::path out = tmp_dir() / "gap.csv";
    CHECK(run({"verify-bounds", "--prior", "horseshoe", "--suite", "gap", "--tau-grid", "0.1,0.01",
               "--x-grid", "-3:3:1", "--out", out.string()}) == 0);
    auto lines = lines_of(slurp(out));
    REQUIRE(lines.size() >= 3);
    CHECK(lines[1] == "suite,tau,x_or_y,lhs,rhs,margin,pass");
    for (std::size_t i = 2; i < lines.size(); ++i) {
        CAPTURE(lines[i]);
        CHECK(lines[i].back() == '1');
    }
}

TEST_CASE("verify-bounds ik suite respects thresholds and passes") {
    fs::path out = tmp_dir() / "ik.csv";
    CHECK(run({"verify-bounds", "--prior", "horseshoe", "--suite", "ik", "--tau-grid",
               "0.6,0.1", "--x-grid", "0.5:8:2.5", "--out", out.string()}) == 0);
    auto lines = lines_of(slurp(out));
    bool saw_lb52_at_06 = false, saw_ub12_at_06 = false;
    for (const auto& l : lines) {
        if (l.rfind("ik-lb52,0.6", 0) == 0) saw_lb52_at_06 = true;
        if (l.rfind("ik-ub12,0.6", 0) == 0) saw_ub12_at_06 = true;
    }
    CHECK(saw_lb52_at_06);
    CHECK_FALSE(saw_ub12_at_06);  // tau = 0.6 >= 1/2 disables the I_{1/2} bounds
}

TEST_CASE("usage errors exit 2") {
    CHECK(run({"frobnicate"}) == 2);
    CHECK(run({"estimate", "--tau", "1"}) == 2);             // missing --prior
    CHECK(run({"verify-bounds", "--prior", "horseshoe"}) == 2);
    CHECK(run({"risk", "--prior", "horseshoe", "--n", "10", "--p", "2", "--tau-rule",
               "bogus", "--out", "-"}) == 2);
}

TEST_CASE("risk subcommand writes the JSON report and per-rep CSV") {
    fs::path out = tmp_dir() / "risk.json";
    fs::path plot = tmp_dir() / "risk_reps.csv";
    CHECK(run({"risk", "--prior", "horseshoe", "--n", "30", "--p", "3", "--signal", "const:5",
               "--tau-rule", "default-log", "--reps", "10", "--seed", "42", "--out", out.string(),
               "--plot-out", plot.string()}) == 0);
    std::string json = slurp(out);
    for (const char* key : {"\"n\":", "\"p\":", "\"tau\":", "\"mc_risk\":", "\"mc_se\":",
                            "\"minimax_ratio\":", "\"thm31_ratio\":", "\"master_seed\": 42"}) {
        CAPTURE(key);
        CHECK(json.find(key) != std::string::npos);
    }
    CHECK(json.find("\"thm32_ratio\":") == std::string::npos);  // not a variance run
    auto plot_lines = lines_of(slurp(plot));
    CHECK(plot_lines.size() == 2 + 10);

    // Identical argv => byte-identical outputs.
    fs::path out2 = tmp_dir() / "risk2.json";
    CHECK(run({"risk", "--prior", "horseshoe", "--n", "30", "--p", "3", "--signal", "const:5",
               "--tau-rule", "default-log", "--reps", "10", "--seed", "42", "--out",
               out2.string()}) == 0);
    CHECK(slurp(out2) == json);
}

TEST_CASE("worker count environment variable changes nothing but wall time") {
    fs::path out1 = tmp_dir() / "w1.json";
    fs::path out2 = tmp_dir() / "w2.json";
    std::vector<std::string> args{"risk", "--prior", "horseshoe",  "--n",   "25",
                                  "--p",  "2",       "--signal",   "const:4", "--tau-rule",
                                  "default-log", "--reps", "8", "--seed", "7"};
    auto a1 = args;
    a1.push_back("--out");
    a1.push_back(out1.string());
    auto a2 = args;
    a2.push_back("--out");
    a2.push_back(out2.string());
    setenv("SHRINKAGE_WORKERS", "1", 1);
    CHECK(run(a1) == 0);
    setenv("SHRINKAGE_WORKERS", "2", 1);
    CHECK(run(a2) == 0);
    unsetenv("SHRINKAGE_WORKERS");
    CHECK(slurp(out1) == slurp(out2));
}

TEST_CASE("config file supplies flags, command line wins") {
    fs::path cfg = tmp_dir() / "cfg.json";
    {
        std::ofstream f(cfg);
        f << "{\"prior\": \"horseshoe\", \"tau-rule\": \"default-log\", \"reps\": 5, "
             "\"signal\": \"const:3\"}\n";
    }
    fs::path out = tmp_dir() / "cfg_run.json";
    fs::path plot = tmp_dir() / "cfg_reps.csv";
    CHECK(run({"risk", "--config", cfg.string(), "--n", "20", "--p", "2", "--reps", "7", "--seed",
               "1", "--out", out.string(), "--plot-out", plot.string()}) == 0);
    auto plot_lines = lines_of(slurp(plot));
    CHECK(plot_lines.size() == 2 + 7);  // --reps 7 beats config's 5
    CHECK(slurp(out).find("\"tau\":") != std::string::npos);
}

TEST_CASE("contract subcommand emits both centering probabilities") {
    fs::path out = tmp_dir() / "contract.json";
    CHECK(run({"contract", "--prior", "horseshoe", "--n", "15", "--p", "2", "--signal", "const:4",
               "--tau-rule", "a-adapted", "--reps", "3", "--draws", "1000", "--radius-mult", "10",
               "--seed", "3", "--out", out.string()}) == 0);
    std::string json = slurp(out);
    CHECK(json.find("\"prob_true_center\":") != std::string::npos);
    CHECK(json.find("\"prob_bayes_center\":") != std::string::npos);
    CHECK(json.find("\"radius\":") != std::string::npos);
}

TEST_CASE("scaling subcommand emits rows and spread") {
    fs::path out = tmp_dir() / "scaling.json";
    CHECK(run({"scaling", "--prior", "horseshoe", "--n-list", "32,64", "--gamma", "0.25",
               "--signal", "scaled:1", "--tau-rule", "default-log", "--reps", "6", "--seed", "9",
               "--out", out.string()}) == 0);
    std::string json = slurp(out);
    CHECK(json.find("\"spread\":") != std::string::npos);
    CHECK(json.find("\"rows\":") != std::string::npos);
    CHECK(json.find("\"minimax_ratio\":") != std::string::npos);
}

TEST_CASE("estimate's total-variance sibling flag routes to run_total_variance") {
    fs::path out = tmp_dir() / "var.json";
    CHECK(run({"risk", "--prior", "horseshoe", "--n", "20", "--p", "0", "--signal", "const:0",
               "--tau-rule", "fixed:0.1", "--reps", "5", "--seed", "2", "--total-variance",
               "--out", out.string()}) == 0);
    std::string json = slurp(out);
    CHECK(json.find("\"total_post_var\":") != std::string::npos);
    CHECK(json.find("\"thm32_ratio\":") != std::string::npos);
    CHECK(json.find("\"thm35_ratio\":") != std::string::npos);
    CHECK(json.find("\"mc_risk\":") == std::string::npos);
}
