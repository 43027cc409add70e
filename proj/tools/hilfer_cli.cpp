// Command-line surface: solve, certify, verify, linear, mlf, fracops.
// Exit status 0 on success, 1 when a well-posed computation misses its
// accuracy or iteration target, 2 on malformed input. Every file-producing
// run either writes its artifacts or leaves a structured error.json; console
// commands print the error document to stdout instead.
#include <hilfer/hilfer.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

namespace {

using namespace hilfer;

struct RunArgs {
    std::string problem;
    std::string out = ".";
    std::size_t grid_n = 0;     // 0 means "use the problem file's value"
    double tol = 0.0;
    std::size_t max_iter = 0;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::vector<double> h_values;
    double c_tilde = 1.0;
};

void apply_overrides(const RunArgs& args, NumericsConfig& n) {
    if (args.grid_n) n.grid_n = args.grid_n;
    if (args.tol > 0.0) n.tol = args.tol;
    if (args.max_iter) n.max_iter = args.max_iter;
    if (args.seed_set) n.seed = args.seed;
}

// Grid-aligned increment lengths {m, 2m, 4m} cells with m ~ grid_n / 64,
// strides capped below the node count.
std::vector<double> default_h_values(double a, std::size_t grid_n) {
    const std::size_t m = std::max<std::size_t>(1, grid_n / 64);
    std::vector<double> out;
    for (std::size_t stride : {m, 2 * m, 4 * m})
        if (stride < grid_n) out.push_back(static_cast<double>(stride) * a /
                                           static_cast<double>(grid_n));
    if (out.empty()) out.push_back(a / static_cast<double>(grid_n));
    return out;
}

std::string join_path(const std::string& dir, const char* name) {
    return (std::filesystem::path(dir) / name).string();
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw InvalidParams("cannot create output directory '" + dir + "'");
}

int run_solve(const RunArgs& args) {
    ProblemConfig cfg = read_problem_file(args.problem);
    apply_overrides(args, cfg.numerics);
    const Problem& p = cfg.problem;
    ensure_dir(args.out);

    const Certificate cert = estimate_constants(p, Budget{10000, cfg.numerics.seed},
                                                cfg.numerics.ml_tol);
    const CertReport rep = check_conditions(cert, p.ball_radius);

    const Grid grid = Grid::uniform(p.t0, p.a, cfg.numerics.grid_n);
    auto [traj, diag] = solve_mild(p, grid, cfg.numerics.tol, cfg.numerics.max_iter,
                                   cfg.numerics.ml_tol);
    const StrongReport srep =
        verify_strong(traj, p, cert, default_h_values(p.a, cfg.numerics.grid_n));

    detail::write_text_file(join_path(args.out, "trajectory.csv"), trajectory_csv(traj));
    write_document(certificate_document(cert, rep), join_path(args.out, "certificate.json"));
    write_document(strong_report_document(srep), join_path(args.out, "strong_report.json"));
    write_document(diagnostics_document(diag, cfg.numerics),
                   join_path(args.out, "diagnostics.json"));

    std::printf("solved on %zu cells in %zu sweeps, final residual %.16g\n",
                cfg.numerics.grid_n, diag.iterations, diag.final_residual);
    std::printf("certificate %s q = %.16g; artifacts in %s\n",
                rep.overall ? "PASS" : "FAIL", cert.q, args.out.c_str());
    return 0;
}

int run_certify(const RunArgs& args) {
    ProblemConfig cfg = read_problem_file(args.problem);
    apply_overrides(args, cfg.numerics);
    const Problem& p = cfg.problem;
    ensure_dir(args.out);

    const Certificate cert = estimate_constants(p, Budget{10000, cfg.numerics.seed},
                                                cfg.numerics.ml_tol);
    const CertReport rep = check_conditions(cert, p.ball_radius);
    write_document(certificate_document(cert, rep), join_path(args.out, "certificate.json"));

    std::printf("certificate %s q = %.16g margin = %.16g\n",
                rep.overall ? "PASS" : "FAIL", rep.q, rep.margin);
    return 0;
}

int run_verify(const RunArgs& args) {
    ProblemConfig cfg = read_problem_file(args.problem);
    apply_overrides(args, cfg.numerics);
    const Problem& p = cfg.problem;
    ensure_dir(args.out);

    const Certificate cert = estimate_constants(p, Budget{10000, cfg.numerics.seed},
                                                cfg.numerics.ml_tol);
    const Grid grid = Grid::uniform(p.t0, p.a, cfg.numerics.grid_n);
    auto [traj, diag] = solve_mild(p, grid, cfg.numerics.tol, cfg.numerics.max_iter,
                                   cfg.numerics.ml_tol);
    (void)diag;
    const std::vector<double> hs =
        args.h_values.empty() ? default_h_values(p.a, cfg.numerics.grid_n) : args.h_values;
    const StrongReport srep = verify_strong(traj, p, cert, hs, args.c_tilde);
    write_document(strong_report_document(srep), join_path(args.out, "strong_report.json"));

    bool dominated = true;
    for (std::size_t i = 0; i < srep.increments.size(); ++i)
        dominated = dominated && srep.increments[i] <= srep.gronwall_rhs[i];
    std::printf("residual_eq = %.16g residual_ic = %.16g dominated = %s\n",
                srep.residual_eq, srep.residual_ic, dominated ? "yes" : "no");
    return 0;
}

int run_linear(const RunArgs& args) {
    ProblemConfig cfg = read_problem_file(args.problem);
    apply_overrides(args, cfg.numerics);
    Problem p = cfg.problem;
    p.nonlin = NonlinSpec::zero();  // keep the nonlocal coupling, drop the forcing
    ensure_dir(args.out);

    const Grid grid = Grid::uniform(p.t0, p.a, cfg.numerics.grid_n);
    auto [traj, diag] = solve_mild(p, grid, cfg.numerics.tol, cfg.numerics.max_iter,
                                   cfg.numerics.ml_tol);
    detail::write_text_file(join_path(args.out, "trajectory.csv"), trajectory_csv(traj));
    write_document(diagnostics_document(diag, cfg.numerics),
                   join_path(args.out, "diagnostics.json"));

    std::printf("linear part solved on %zu cells in %zu sweeps; artifacts in %s\n",
                cfg.numerics.grid_n, diag.iterations, args.out.c_str());
    return 0;
}

int run_mlf(double alpha, double beta, double z) {
    MLParams p;
    p.alpha = alpha;
    p.beta = beta;
    p.tol = 1e-15;  // printing 16 digits; leave the truncation below them
    std::printf("%.16g\n", ml_eval(p, z).value);
    return 0;
}

// Endpoint value of the order-mu integral of f(s) = s on [0, 1]; the
// quadrature is exact for piecewise-linear integrands, so this matches the
// power rule to roundoff at any grid size.
int run_fracops(double mu, std::size_t grid_n) {
    const Grid grid = Grid::uniform(0.0, 1.0, grid_n);
    const SampledFn f = SampledFn::from_scalar(grid, [](double t) { return t; });
    const SampledFn out = rl_integral(f, mu);
    std::printf("%.16g\n", out.values.back()(0));
    return 0;
}

void report_error(const ordered_json& doc, const std::string& what,
                  const std::string& out_dir) {
    std::fprintf(stderr, "error: %s\n", what.c_str());
    if (!out_dir.empty()) {
        try {
            ensure_dir(out_dir);
            write_document(doc, join_path(out_dir, "error.json"));
            return;
        } catch (...) {
            // fall through to stdout so the document is never lost
        }
    }
    std::fputs(document_text(doc).c_str(), stdout);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"solver and certifier for delayed semilinear fractional evolution problems"};
    app.require_subcommand(1);

    RunArgs args;
    double mlf_alpha = 1.0, mlf_beta = 1.0, mlf_z = 0.0;
    double frac_mu = 0.5;
    std::size_t frac_grid_n = 1024;

    auto add_common = [&args](CLI::App* sub, bool with_verify_flags) {
        sub->add_option("--problem", args.problem, "problem definition file (.toml or .json)")
            ->required();
        sub->add_option("--out", args.out, "output directory for artifacts");
        sub->add_option("--grid-n", args.grid_n, "override the number of grid cells");
        sub->add_option("--tol", args.tol, "override the fixed-point tolerance");
        sub->add_option("--max-iter", args.max_iter, "override the sweep limit");
        sub->add_option("--seed", args.seed, "override the sampling seed")
            ->each([&args](const std::string&) { args.seed_set = true; });
        if (with_verify_flags) {
            sub->add_option("--h-values", args.h_values,
                            "comma-separated increment lengths to test")
                ->delimiter(',');
            sub->add_option("--c-tilde", args.c_tilde,
                            "delay modulus constant in the increment bound");
        }
    };

    CLI::App* solve = app.add_subcommand(
        "solve", "solve the problem and emit trajectory, certificate, report, diagnostics");
    add_common(solve, false);
    CLI::App* certify =
        app.add_subcommand("certify", "estimate the contraction constants and decide q < 1");
    add_common(certify, false);
    CLI::App* verify = app.add_subcommand(
        "verify", "solve, then check defect and increment bounds of the result");
    add_common(verify, true);
    CLI::App* linear =
        app.add_subcommand("linear", "solve with the forcing dropped (linear part only)");
    add_common(linear, false);

    CLI::App* mlf = app.add_subcommand("mlf", "evaluate the two-parameter series function");
    mlf->add_option("--alpha", mlf_alpha, "first parameter, > 0")->required();
    mlf->add_option("--beta", mlf_beta, "second parameter");
    mlf->add_option("--z", mlf_z, "argument")->required();

    CLI::App* fracops = app.add_subcommand(
        "fracops", "endpoint value of the order-mu integral of f(s) = s on [0, 1]");
    fracops->add_option("--mu", frac_mu, "integration order, > 0")->required();
    fracops->add_option("--grid-n", frac_grid_n, "number of grid cells");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const bool writes_files = solve->parsed() || certify->parsed() || verify->parsed() ||
                              linear->parsed();
    const std::string error_dir = writes_files ? args.out : std::string();

    try {
        if (solve->parsed()) return run_solve(args);
        if (certify->parsed()) return run_certify(args);
        if (verify->parsed()) return run_verify(args);
        if (linear->parsed()) return run_linear(args);
        if (mlf->parsed()) return run_mlf(mlf_alpha, mlf_beta, mlf_z);
        return run_fracops(frac_mu, frac_grid_n);
    } catch (const NumericError& e) {
        report_error(error_document(e), e.what(), error_dir);
        return 1;
    } catch (const Error& e) {
        report_error(error_document(e), e.what(), error_dir);
        return 2;
    } catch (const std::exception& e) {
        report_error(error_document("internal_error", e.what()), e.what(), error_dir);
        return 2;
    }
}
