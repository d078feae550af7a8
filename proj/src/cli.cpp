#include "polysinc/cli.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "polysinc/adaptive.hpp"
#include "polysinc/analysis.hpp"
#include "polysinc/problem_file.hpp"
#include "polysinc/problems.hpp"
#include "polysinc/report.hpp"

namespace polysinc {

namespace {

namespace fs = std::filesystem;

std::string default_out_dir() {
    if (const char* env = std::getenv("POLYSINC_OUT_DIR")) return env;
    return ".";
}

struct RunOutcome {
    RunHistory history;
    RunReport report;
};

RunOutcome execute(const ProblemSpec& spec, const RunOptions& options,
                   const std::string& problem_id,
                   const std::map<std::string, std::string>& definition) {
    const auto t0 = std::chrono::steady_clock::now();
    RunOutcome out{run(spec, options), {}};
    const auto t1 = std::chrono::steady_clock::now();
    out.report = make_report(out.history, spec, options);
    out.report.problem_id = problem_id;
    out.report.definition = definition;
    out.report.elapsed_seconds = std::chrono::duration<double>(t1 - t0).count();
    return out;
}

void write_outputs(const std::string& dir, const std::string& format,
                   const RunOutcome& outcome, const ProblemSpec& spec) {
    fs::create_directories(dir);
    const bool json = format != "csv";
    const bool csv = format != "json";
    if (json) {
        std::ofstream out(fs::path(dir) / "report.json", std::ios::binary);
        out << report_to_json(outcome.report).dump(2) << '\n';
    }
    if (csv) {
        write_residuals_csv((fs::path(dir) / "residuals.csv").string(), outcome.report);
        write_solution_csv((fs::path(dir) / "solution.csv").string(),
                           outcome.history.final_solution, spec.exact);
        write_partitions_csv((fs::path(dir) / "partitions.csv").string(),
                             outcome.history);
    }
}

int run_solve(const std::string& problem_id, const std::string& file, int N,
              bool n_set, double eps, bool eps_set, int max_iter,
              const std::string& mark_signal, const std::string& out_dir,
              const std::string& format) {
    ProblemSpec spec;
    std::map<std::string, std::string> definition;
    if (!problem_id.empty()) {
        const BenchmarkEntry entry = builtin(problem_id);
        spec = entry.spec;
        definition["builtin"] = entry.id;
        definition["description"] = entry.description;
        if (!n_set) N = (entry.m - 1) / 2;
        if (!eps_set) eps = entry.eps_default;
    } else {
        ParsedProblem parsed = load_problem_file(file);
        spec = parsed.spec;
        definition = parsed.definition;
        definition["file"] = file;
    }

    RunOptions options;
    options.N = N;
    options.eps_stop = eps;
    options.max_iter = max_iter;
    if (mark_signal == "exact-error") {
        if (!spec.exact)
            throw std::runtime_error("--mark-signal exact-error needs an exact solution");
        options.signal = MarkSignal::exact_error;
    }

    const RunOutcome outcome = execute(spec, options, problem_id, definition);
    write_outputs(out_dir, format, outcome, spec);

    const RunReport& rep = outcome.report;
    std::printf("stop: %s after %zu iterations, %d partitions, mean residual %.3e\n",
                rep.stop_reason.c_str(), rep.iterations.size(),
                rep.iterations.back().partition_count, rep.iterations.back().mean);
    if (rep.has_exact)
        std::printf("error vs exact: l2 %.3e, sup %.3e\n", rep.error_l2, rep.error_sup);
    std::printf("outputs in %s\n", out_dir.c_str());
    return rep.stop_reason == "threshold_met" ? 0 : 2;
}

int run_bench(const std::vector<std::string>& only, const std::string& out_dir,
              bool reference_eps) {
    std::vector<std::string> ids = only.empty() ? builtin_ids() : only;
    std::printf("%-16s %4s %8s %12s | %6s %8s %12s\n", "id", "iter", "|S|", "error",
                "ref-it", "ref-|S|", "ref-error");
    bool any_failed = false;
    for (const std::string& id : ids) {
        const BenchmarkEntry entry = builtin(id);  // throws on unknown id
        RunOptions options;
        options.N = (entry.m - 1) / 2;
        options.eps_stop = reference_eps ? entry.eps_reference : entry.eps_default;
        try {
            const RunOutcome outcome = execute(entry.spec, options, id, {});
            if (!out_dir.empty())
                write_outputs((fs::path(out_dir) / id).string(), "all", outcome,
                              entry.spec);
            const RunReport& rep = outcome.report;
            const double err =
                entry.ref_error_norm == "sup" ? rep.error_sup : rep.error_l2;
            std::printf("%-16s %4zu %8lld %12.3e | %6d %8lld %12.3e\n", id.c_str(),
                        rep.iterations.size(), rep.iterations.back().point_set_size,
                        err, entry.ref_kappa, entry.ref_points, entry.ref_error);
            if (rep.stop_reason != "threshold_met")
                std::printf("%-16s ^ stopped by %s\n", "", rep.stop_reason.c_str());
        } catch (const std::exception& e) {
            std::printf("%-16s FAILED: %s\n", id.c_str(), e.what());
            any_failed = true;
        }
    }
    return any_failed ? 2 : 0;
}

}  // namespace

int cli_main(int argc, char** argv) {
    CLI::App app{"adaptive piecewise Poly-Sinc collocation solver for linear ODEs"};
    app.require_subcommand(1);

    std::string problem_id, file, mark_signal = "residual", format = "all";
    std::string out_dir = default_out_dir();
    int N = 2, max_iter = 30;
    double eps = 1e-6;

    CLI::App* solve = app.add_subcommand("solve", "run one problem adaptively");
    auto* opt_problem = solve->add_option("--problem", problem_id, "builtin problem id");
    auto* opt_file = solve->add_option("--file", file, "problem definition file");
    opt_problem->excludes(opt_file);
    auto* opt_n = solve->add_option("--N", N, "Sinc half-count (m = 2N+1 points)");
    auto* opt_eps = solve->add_option("--eps", eps, "stopping threshold on the mean residual norm");
    solve->add_option("--max-iter", max_iter, "iteration budget");
    solve->add_option("--mark-signal", mark_signal, "residual | exact-error")
        ->check(CLI::IsMember({"residual", "exact-error"}));
    solve->add_option("--out", out_dir, "output directory (default $POLYSINC_OUT_DIR or .)");
    solve->add_option("--format", format, "json | csv | all")
        ->check(CLI::IsMember({"json", "csv", "all"}));

    std::vector<std::string> only;
    std::string bench_out;
    bool reference_eps = false;
    CLI::App* bench = app.add_subcommand("bench", "run the builtin benchmark set");
    bench->add_option("--only", only, "subset of problem ids")->delimiter(',');
    bench->add_option("--out", bench_out, "write per-problem outputs under this directory");
    bench->add_flag("--reference-eps", reference_eps,
                    "use each problem's original stopping threshold instead of the "
                    "double-precision default");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (solve->parsed()) {
            if (problem_id.empty() && file.empty())
                throw std::runtime_error("one of --problem or --file is required");
            return run_solve(problem_id, file, N, opt_n->count() > 0, eps,
                             opt_eps->count() > 0, max_iter, mark_signal, out_dir,
                             format);
        }
        return run_bench(only, bench_out, reference_eps);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace polysinc
