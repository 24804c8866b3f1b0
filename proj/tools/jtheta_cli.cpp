// jtheta: evaluate theta functions, run identity checks, write convergence tables.
//
//   jtheta eval theta1 --z 0.5 --tau i [--reduce] [--eps 1e-15] [--digits 15]
//   jtheta verify theorem --count 5 --tol 1e-9
//   jtheta sweep edge_limit --from 2 --to 20 --format csv --output edge.csv
//
// Exit codes: 0 ok, 1 a verification check failed, 2 bad input,
// 3 no convergence, 4 output not writable.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include <jtheta/jtheta.hpp>

namespace
{

constexpr int exit_ok = 0;
constexpr int exit_failed = 1;
constexpr int exit_usage = 2;
constexpr int exit_no_convergence = 3;
constexpr int exit_unwritable = 4;

unsigned thread_count()
{
    const char *env = std::getenv("JTHETA_THREADS");
    if (env == nullptr || *env == '\0') {
        return 1;
    }
    char *end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1) {
        throw jtheta::DomainError("JTHETA_THREADS must be an integer >= 1");
    }
    return static_cast<unsigned>(v);
}

struct EvalArgs {
    std::string function;
    std::string z = "0";
    std::string tau;
    double eps = 1e-15;
    int max_terms = 100000;
    bool reduce = false;
    int digits = 15;
};

int run_eval(const EvalArgs &args)
{
    static const std::map<std::string, jtheta::ThetaKind> kinds{{"theta1", jtheta::ThetaKind::theta1},
                                                                {"theta2", jtheta::ThetaKind::theta2},
                                                                {"theta3", jtheta::ThetaKind::theta3},
                                                                {"theta4", jtheta::ThetaKind::theta4}};
    const jtheta::Complex z = jtheta::parse_complex(args.z);
    const jtheta::TauPoint tau(jtheta::parse_complex(args.tau));
    jtheta::EvalConfig cfg;
    cfg.eps = args.eps;
    cfg.max_terms = args.max_terms;
    cfg.reduction_enabled = args.reduce;
    const auto r = jtheta::evaluate(kinds.at(args.function), z, tau, cfg);
    std::cout << jtheta::format_complex(r.value, args.digits) << '\n'
              << "terms_used=" << r.terms_used << " reduced=" << (r.reduced ? "true" : "false") << '\n';
    return exit_ok;
}

struct VerifyArgs {
    std::string suite;
    jtheta::VerifyOptions opts;
    std::optional<double> tol;
    bool timing = false;
};

int run_verify(VerifyArgs args)
{
    if (!jtheta::is_suite_name(args.suite)) {
        std::cerr << "jtheta verify: unknown suite '" << args.suite << "'\n";
        return exit_usage;
    }
    args.opts.tol = args.tol;
    args.opts.threads = thread_count();
    const auto reports = jtheta::run_suite(args.suite, args.opts);
    bool all_passed = true;
    for (const auto &r : reports) {
        std::cout << jtheta::to_json_line(r, args.timing) << '\n';
        all_passed = all_passed && r.passed;
    }
    return all_passed ? exit_ok : exit_failed;
}

struct SweepArgs {
    std::string target;
    std::optional<double> from;
    std::optional<double> to;
    int step = 1;
    int points = 10;
    double a = 0.5;
    double b = -0.25;
    double y = 2.0;
    double t = 0.5;
    std::string z = "0.3";
    double eps = 1e-12;
    std::string format = "csv";
    std::string output = "-";
};

int as_int(double v, const char *flag)
{
    if (v != std::floor(v) || std::abs(v) > 1e9) {
        throw jtheta::DomainError(std::string("sweep edge_limit: ") + flag + " must be an integer");
    }
    return static_cast<int>(v);
}

int run_sweep(const SweepArgs &args)
{
    jtheta::Table table;
    if (args.target == "edge_limit") {
        table = jtheta::sweep_edge_limit(as_int(args.from.value_or(2), "--from"), as_int(args.to.value_or(20), "--to"),
                                         args.step, args.a, args.b, args.y, args.t);
    } else if (args.target == "reduction_gain") {
        table = jtheta::sweep_reduction_gain(args.from.value_or(0.01), args.to.value_or(1.0), args.points,
                                             jtheta::parse_complex(args.z), args.eps);
    } else {
        table = jtheta::sweep_lambert_tail(args.from.value_or(0.5), args.to.value_or(5.0), args.points, args.a, args.b,
                                           args.eps);
    }
    const std::string text = args.format == "json" ? jtheta::to_json(table) : jtheta::to_csv(table);
    if (args.output == "-") {
        std::cout << text;
        return exit_ok;
    }
    std::ofstream out(args.output, std::ios::binary | std::ios::trunc);
    if (!out) {
        std::cerr << "jtheta sweep: cannot write '" << args.output << "'\n";
        return exit_unwritable;
    }
    out << text;
    out.close();
    if (!out) {
        std::cerr << "jtheta sweep: cannot write '" << args.output << "'\n";
        return exit_unwritable;
    }
    return exit_ok;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Jacobi theta functions and checks of their inversion law"};
    app.require_subcommand(1);

    EvalArgs eval;
    auto *eval_cmd = app.add_subcommand("eval", "evaluate theta1..theta4 at (z, tau)");
    eval_cmd->add_option("function", eval.function)->required()->check(
        CLI::IsMember({"theta1", "theta2", "theta3", "theta4"}));
    eval_cmd->add_option("--z", eval.z, "complex literal, e.g. 0.5-0.25i")->capture_default_str();
    eval_cmd->add_option("--tau", eval.tau, "complex literal with Im > 0")->required();
    eval_cmd->add_option("--eps", eval.eps, "product tail bound")->capture_default_str();
    eval_cmd->add_option("--max-terms", eval.max_terms)->capture_default_str();
    eval_cmd->add_flag("--reduce", eval.reduce, "apply tau -> -1/tau when |tau| < 1");
    eval_cmd->add_option("--digits", eval.digits, "significant digits printed")
        ->check(CLI::Range(1, 17))
        ->capture_default_str();

    VerifyArgs verify;
    auto *verify_cmd = app.add_subcommand("verify", "run a check suite, one JSON object per line");
    verify_cmd->add_option("suite", verify.suite, "eq2|lemma1|lemma2|lemma3|theorem|all")->required();
    verify_cmd->add_option("--seed", verify.opts.seed)->capture_default_str();
    verify_cmd->add_option("--count", verify.opts.count, "points per sampled suite")->check(CLI::PositiveNumber);
    verify_cmd->add_option("--tol", verify.tol, "tolerance for every check of the suite")->check(CLI::PositiveNumber);
    verify_cmd->add_option("--n", verify.opts.n, "contour index for lemma2 and lemma3")->check(CLI::PositiveNumber);
    verify_cmd->add_option("--a", verify.opts.a)->capture_default_str();
    verify_cmd->add_option("--b", verify.opts.b)->capture_default_str();
    verify_cmd->add_option("--y", verify.opts.y)->capture_default_str();
    verify_cmd->add_flag("--timing", verify.timing, "record wall_ms (output is no longer reproducible)");

    SweepArgs sweep;
    auto *sweep_cmd = app.add_subcommand("sweep", "write a convergence table");
    sweep_cmd->add_option("target", sweep.target)->required()->check(
        CLI::IsMember({"edge_limit", "reduction_gain", "lambert_tail"}));
    sweep_cmd->add_option("--from", sweep.from, "first n, Im tau or y");
    sweep_cmd->add_option("--to", sweep.to, "last n, Im tau or y");
    sweep_cmd->add_option("--step", sweep.step, "n increment (edge_limit)")->capture_default_str();
    sweep_cmd->add_option("--points", sweep.points, "samples (reduction_gain, lambert_tail)")->capture_default_str();
    sweep_cmd->add_option("--a", sweep.a)->capture_default_str();
    sweep_cmd->add_option("--b", sweep.b)->capture_default_str();
    sweep_cmd->add_option("--y", sweep.y)->capture_default_str();
    sweep_cmd->add_option("--t", sweep.t, "edge parameter in [0.05, 0.95]")->capture_default_str();
    sweep_cmd->add_option("--z", sweep.z, "theta argument (reduction_gain)")->capture_default_str();
    sweep_cmd->add_option("--eps", sweep.eps)->capture_default_str();
    sweep_cmd->add_option("--format", sweep.format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    sweep_cmd->add_option("--output", sweep.output, "file path, - for stdout")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (eval_cmd->parsed()) {
            return run_eval(eval);
        }
        if (verify_cmd->parsed()) {
            return run_verify(verify);
        }
        return run_sweep(sweep);
    } catch (const jtheta::TruncationError &e) {
        std::cerr << "jtheta: " << e.what() << '\n';
        return exit_no_convergence;
    } catch (const jtheta::AccuracyError &e) {
        std::cerr << "jtheta: " << e.what() << '\n';
        return exit_no_convergence;
    } catch (const jtheta::DomainError &e) {
        std::cerr << "jtheta: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception &e) {
        std::cerr << "jtheta: " << e.what() << '\n';
        return exit_usage;
    }
}
