#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "polysinc/adaptive.hpp"
#include "polysinc/analysis.hpp"

namespace polysinc {

// Machine-readable record of one adaptive run.  Serializes losslessly to
// JSON (round-trip decode == encode); the CSV emitters print floats with
// 17 significant digits.
struct RunReport {
    struct Iteration {
        int index = 0;
        int partition_count = 0;
        double mean = 0.0;
        double stddev = 0.0;
        double omega = 0.0;
        bool degenerate = false;
        std::vector<int> marked;
        std::vector<double> norms;
        long long total_points = 0;
        long long point_set_size = 0;
        long long boundary_set_size = 0;

        bool operator==(const Iteration&) const = default;
    };

    std::string problem_id;  // empty for file-defined problems
    std::map<std::string, std::string> definition;  // echo of the problem source

    int N = 2;
    int m = 5;
    double eps_stop = 1e-6;
    int max_iter = 30;
    int n_q = 16;
    std::string mark_signal = "residual";

    std::vector<Iteration> iterations;
    std::string stop_reason;  // "threshold_met" | "max_iterations" | "stagnation"

    bool has_exact = false;
    double error_l2 = 0.0;
    double error_sup = 0.0;

    bool has_fit = false;
    double fit_amplitude = 0.0;  // A
    double fit_r = 0.0;
    double fit_lambda = 0.0;
    double fit_delta = 0.0;

    double elapsed_seconds = 0.0;

    bool operator==(const RunReport&) const = default;
};

RunReport make_report(const RunHistory& history, const ProblemSpec& spec,
                      const RunOptions& options);

nlohmann::json report_to_json(const RunReport& report);
RunReport report_from_json(const nlohmann::json& j);

// residuals.csv: "iteration,mean,omega", one row per iteration.
void write_residuals_csv(const std::string& path, const RunReport& report);

// solution.csv: "x,y[,y_exact,abs_error]" over 2001 uniform samples plus
// every partition boundary, sorted and deduplicated.
void write_solution_csv(const std::string& path, const PiecewiseSolution& sol,
                        const RealFn& exact);

// partitions.csv: "iteration,boundary", one row per boundary per iteration.
void write_partitions_csv(const std::string& path, const RunHistory& history);

}  // namespace polysinc
