// Drives the installed binary end to end through std::system: exit codes,
// printed values, artifact files, and the structured error documents.
#include <hilfer/gamma.hpp>

#include <gtest/gtest.h>
#include <json.hpp>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <hilfer/problem_io.hpp>

#include "demo_problems.hpp"

namespace {

using nlohmann::json;

struct RunResult {
    int status = -1;
    std::string out;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Runs the binary with stdout captured; stderr goes to a scratch file.
RunResult run_cli(const std::string& args, const std::string& tag) {
    const std::string dir = ::testing::TempDir();
    const std::string out_file = dir + "cli_stdout_" + tag;
    const std::string err_file = dir + "cli_stderr_" + tag;
    const std::string cmd = std::string("\"") + HILFER_CLI_PATH + "\" " + args + " > " +
                            out_file + " 2> " + err_file;
    const int rc = std::system(cmd.c_str());
    RunResult r;
    if (rc != -1 && WIFEXITED(rc)) r.status = WEXITSTATUS(rc);
    r.out = slurp(out_file);
    return r;
}

std::string fresh_dir(const std::string& name) {
    const std::string dir = ::testing::TempDir() + name;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

std::string problems_dir() { return HILFER_PROBLEMS_DIR; }

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start < text.size()) {
        const std::size_t p = text.find('\n', start);
        out.push_back(text.substr(start, p - start));
        if (p == std::string::npos) break;
        start = p + 1;
    }
    return out;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t p = line.find(sep, start);
        if (p == std::string::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, p - start));
        start = p + 1;
    }
}

}  // namespace

TEST(Mlf, ExponentialCasePrintsSixteenDigits) {
    const RunResult r = run_cli("mlf --alpha 1 --beta 1 --z 1", "mlf_exp");
    EXPECT_EQ(r.status, 0);
    EXPECT_EQ(r.out, "2.718281828459045\n");

    const RunResult c = run_cli("mlf --alpha 2 --beta 1 --z 1", "mlf_cosh");
    EXPECT_EQ(c.status, 0);
    EXPECT_EQ(c.out, "1.543080634815244\n");
}

TEST(Mlf, SeriesRadiusFailureSetsNumericStatus) {
    const RunResult r = run_cli("mlf --alpha 1 --beta 1 --z 20", "mlf_radius");
    EXPECT_EQ(r.status, 1);
    const json doc = json::parse(r.out);
    EXPECT_EQ(doc["error"]["kind"], "non_convergence");
}

TEST(Fracops, PowerRuleEndpointMatchesClosedForm) {
    const RunResult r = run_cli("fracops --mu 0.5", "fracops_half");
    EXPECT_EQ(r.status, 0);
    const double v = std::strtod(r.out.c_str(), nullptr);
    EXPECT_NEAR(v, hilfer::recip_gamma(2.5), 1e-12);  // Gamma(2)/Gamma(2.5)
}

TEST(Solve, DemoRunEmitsAllFourArtifacts) {
    const std::string out = fresh_dir("cli_solve_demo");
    const RunResult r =
        run_cli("solve --problem " + problems_dir() + "/demo.toml --out " + out, "solve_demo");
    ASSERT_EQ(r.status, 0);

    for (const char* name :
         {"trajectory.csv", "certificate.json", "strong_report.json", "diagnostics.json"})
        EXPECT_TRUE(std::filesystem::exists(out + "/" + name)) << name;

    const json diag = json::parse(slurp(out + "/diagnostics.json"));
    EXPECT_TRUE(diag["converged"].get<bool>());
    EXPECT_LT(diag["final_residual"].get<double>(), 1e-8);

    const json cert = json::parse(slurp(out + "/certificate.json"));
    EXPECT_TRUE(cert["overall"].get<bool>());
    EXPECT_NEAR(cert["q"].get<double>(), 0.6, 1e-12);

    const json srep = json::parse(slurp(out + "/strong_report.json"));
    for (const auto& d : srep["dominated"]) EXPECT_TRUE(d.get<bool>());

    const auto rows = lines_of(slurp(out + "/trajectory.csv"));
    ASSERT_EQ(rows.size(), 514u);  // header + 513 nodes
    EXPECT_EQ(rows[0], "t,weight,xw_1,xw_2,x_1,x_2");
}

TEST(Solve, RunsAreByteIdentical) {
    const std::string a = fresh_dir("cli_det_a");
    const std::string b = fresh_dir("cli_det_b");
    const std::string base = "solve --problem " + problems_dir() + "/weighted_demo.toml --out ";
    ASSERT_EQ(run_cli(base + a, "det_a").status, 0);
    ASSERT_EQ(run_cli(base + b, "det_b").status, 0);
    for (const char* name :
         {"trajectory.csv", "certificate.json", "strong_report.json", "diagnostics.json"}) {
        const std::string fa = slurp(a + "/" + name);
        EXPECT_FALSE(fa.empty()) << name;
        EXPECT_EQ(fa, slurp(b + "/" + name)) << name;
    }
}

TEST(Solve, GridOverrideShrinksTheTable) {
    const std::string out = fresh_dir("cli_solve_small");
    const RunResult r = run_cli(
        "solve --problem " + problems_dir() + "/demo.toml --grid-n 128 --out " + out,
        "solve_small");
    ASSERT_EQ(r.status, 0);
    EXPECT_EQ(lines_of(slurp(out + "/trajectory.csv")).size(), 130u);
    const json diag = json::parse(slurp(out + "/diagnostics.json"));
    EXPECT_EQ(diag["numerics"]["grid_n"].get<std::size_t>(), 128u);
}

TEST(Certify, WeightedDemoPassesAndReportsQ) {
    const std::string out = fresh_dir("cli_certify");
    const RunResult r = run_cli(
        "certify --problem " + problems_dir() + "/weighted_demo.toml --out " + out, "certify");
    ASSERT_EQ(r.status, 0);
    EXPECT_EQ(r.out.rfind("certificate PASS q = ", 0), 0u) << r.out;

    const json cert = json::parse(slurp(out + "/certificate.json"));
    EXPECT_TRUE(cert["overall"].get<bool>());
    EXPECT_TRUE(cert["constants"]["zeta1"]["proved"].get<bool>());
    EXPECT_LT(cert["q"].get<double>(), 1.0);
}

TEST(Verify, DemoDominationHolds) {
    const std::string out = fresh_dir("cli_verify");
    const RunResult r = run_cli(
        "verify --problem " + problems_dir() + "/demo.toml --out " + out, "verify");
    ASSERT_EQ(r.status, 0);
    EXPECT_NE(r.out.find("dominated = yes"), std::string::npos) << r.out;

    const json srep = json::parse(slurp(out + "/strong_report.json"));
    ASSERT_EQ(srep["dominated"].size(), 3u);
    for (const auto& d : srep["dominated"]) EXPECT_TRUE(d.get<bool>());
    EXPECT_LT(srep["residual_ic"].get<double>(), 1e-6);
}

TEST(Linear, ClassicalDecayMatchesTheExponential) {
    const std::string out = fresh_dir("cli_linear");
    const RunResult r = run_cli(
        "linear --problem " + problems_dir() + "/classical.toml --out " + out, "linear");
    ASSERT_EQ(r.status, 0);

    const auto rows = lines_of(slurp(out + "/trajectory.csv"));
    ASSERT_EQ(rows.size(), 514u);
    EXPECT_EQ(rows[0], "t,weight,xw_1,x_1");
    const auto last = split(rows.back(), ',');
    ASSERT_EQ(last.size(), 4u);
    EXPECT_EQ(std::strtod(last[0].c_str(), nullptr), 1.0);
    EXPECT_NEAR(std::strtod(last[3].c_str(), nullptr), std::exp(-1.0), 1e-10);
}

TEST(Errors, MissingProblemFileWritesDocumentAndExitsTwo) {
    const std::string out = fresh_dir("cli_err_missing");
    const RunResult r = run_cli(
        "solve --problem " + out + "/does_not_exist.toml --out " + out, "err_missing");
    EXPECT_EQ(r.status, 2);
    const json doc = json::parse(slurp(out + "/error.json"));
    EXPECT_EQ(doc["error"]["kind"], "parse_error");
}

TEST(Errors, MalformedInvocationsExitTwo) {
    EXPECT_EQ(run_cli("solve --no-such-flag", "err_flag").status, 2);
    EXPECT_EQ(run_cli("frobnicate", "err_sub").status, 2);
    EXPECT_EQ(run_cli("", "err_none").status, 2);  // a subcommand is required
}

TEST(Errors, DivergentIterationExitsOne) {
    const std::string out = fresh_dir("cli_err_hot");
    hilfer::ProblemConfig cfg;
    cfg.problem = demo::sine_demo();
    cfg.problem.nonlin = hilfer::NonlinSpec::sine(6.0);  // far beyond contraction
    cfg.numerics.max_iter = 8;
    const std::string path = out + "/hot.toml";
    hilfer::write_problem(cfg, path);

    const RunResult r = run_cli("solve --problem " + path + " --out " + out, "err_hot");
    EXPECT_EQ(r.status, 1);
    const json doc = json::parse(slurp(out + "/error.json"));
    EXPECT_EQ(doc["error"]["kind"], "max_iter_exceeded");
    EXPECT_EQ(doc["error"]["iterations"].get<std::size_t>(), 8u);
}
