#include "polysinc/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace polysinc {

namespace {

std::string stop_reason_name(StopReason reason) {
    switch (reason) {
        case StopReason::threshold_met: return "threshold_met";
        case StopReason::max_iterations: return "max_iterations";
        case StopReason::stagnation: return "stagnation";
    }
    return "unknown";
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    return out;
}

}  // namespace

RunReport make_report(const RunHistory& history, const ProblemSpec& spec,
                      const RunOptions& options) {
    RunReport rep;
    rep.N = options.N;
    rep.m = 2 * options.N + 1;
    rep.eps_stop = options.eps_stop;
    rep.max_iter = options.max_iter;
    rep.n_q = options.n_q;
    rep.mark_signal =
        options.signal == MarkSignal::residual ? "residual" : "exact-error";
    rep.stop_reason = stop_reason_name(history.reason);

    for (const auto& r : history.records) {
        RunReport::Iteration it;
        it.index = r.index;
        it.partition_count = r.partition_count;
        it.mean = r.mean;
        it.stddev = r.stddev;
        it.omega = r.omega;
        it.degenerate = r.degenerate;
        it.marked = r.marked;
        it.norms = r.norms;
        it.total_points = r.total_points;
        it.point_set_size = r.point_set_size;
        it.boundary_set_size = r.boundary_set_size;
        rep.iterations.push_back(std::move(it));
    }

    if (spec.exact) {
        rep.has_exact = true;
        const ErrorNorms err = error_norms(history.final_solution, spec.exact);
        rep.error_l2 = err.l2;
        rep.error_sup = err.sup;
    }

    if (history.records.size() >= 3) {
        try {
            const BoundFit fit = fit_bound_model(history, rep.m, spec.b - spec.a);
            if (fit.converged) {
                rep.has_fit = true;
                rep.fit_amplitude = fit.A;
                rep.fit_r = fit.r;
                rep.fit_lambda = fit.lambda;
                rep.fit_delta = fit.delta;
            }
        } catch (const FitError&) {
            // model fit is advisory; a run report without one is still valid
        }
    }
    return rep;
}

nlohmann::json report_to_json(const RunReport& rep) {
    nlohmann::json j;
    j["problem_id"] = rep.problem_id;
    j["definition"] = rep.definition;
    j["settings"] = {{"N", rep.N},
                     {"m", rep.m},
                     {"eps_stop", rep.eps_stop},
                     {"max_iter", rep.max_iter},
                     {"n_q", rep.n_q},
                     {"mark_signal", rep.mark_signal}};
    j["stop_reason"] = rep.stop_reason;
    j["iterations"] = nlohmann::json::array();
    for (const auto& it : rep.iterations) {
        j["iterations"].push_back({{"index", it.index},
                                   {"partition_count", it.partition_count},
                                   {"mean", it.mean},
                                   {"stddev", it.stddev},
                                   {"omega", it.omega},
                                   {"degenerate", it.degenerate},
                                   {"marked", it.marked},
                                   {"norms", it.norms},
                                   {"total_points", it.total_points},
                                   {"point_set_size", it.point_set_size},
                                   {"boundary_set_size", it.boundary_set_size}});
    }
    j["has_exact"] = rep.has_exact;
    if (rep.has_exact) {
        j["error_l2"] = rep.error_l2;
        j["error_sup"] = rep.error_sup;
    }
    j["has_fit"] = rep.has_fit;
    if (rep.has_fit) {
        j["fit"] = {{"amplitude", rep.fit_amplitude},
                    {"r", rep.fit_r},
                    {"lambda", rep.fit_lambda},
                    {"delta", rep.fit_delta}};
    }
    j["elapsed_seconds"] = rep.elapsed_seconds;
    return j;
}

RunReport report_from_json(const nlohmann::json& j) {
    RunReport rep;
    rep.problem_id = j.at("problem_id").get<std::string>();
    rep.definition = j.at("definition").get<std::map<std::string, std::string>>();
    const auto& s = j.at("settings");
    rep.N = s.at("N").get<int>();
    rep.m = s.at("m").get<int>();
    rep.eps_stop = s.at("eps_stop").get<double>();
    rep.max_iter = s.at("max_iter").get<int>();
    rep.n_q = s.at("n_q").get<int>();
    rep.mark_signal = s.at("mark_signal").get<std::string>();
    rep.stop_reason = j.at("stop_reason").get<std::string>();
    for (const auto& ji : j.at("iterations")) {
        RunReport::Iteration it;
        it.index = ji.at("index").get<int>();
        it.partition_count = ji.at("partition_count").get<int>();
        it.mean = ji.at("mean").get<double>();
        it.stddev = ji.at("stddev").get<double>();
        it.omega = ji.at("omega").get<double>();
        it.degenerate = ji.at("degenerate").get<bool>();
        it.marked = ji.at("marked").get<std::vector<int>>();
        it.norms = ji.at("norms").get<std::vector<double>>();
        it.total_points = ji.at("total_points").get<long long>();
        it.point_set_size = ji.at("point_set_size").get<long long>();
        it.boundary_set_size = ji.at("boundary_set_size").get<long long>();
        rep.iterations.push_back(std::move(it));
    }
    rep.has_exact = j.at("has_exact").get<bool>();
    if (rep.has_exact) {
        rep.error_l2 = j.at("error_l2").get<double>();
        rep.error_sup = j.at("error_sup").get<double>();
    }
    rep.has_fit = j.at("has_fit").get<bool>();
    if (rep.has_fit) {
        const auto& f = j.at("fit");
        rep.fit_amplitude = f.at("amplitude").get<double>();
        rep.fit_r = f.at("r").get<double>();
        rep.fit_lambda = f.at("lambda").get<double>();
        rep.fit_delta = f.at("delta").get<double>();
    }
    rep.elapsed_seconds = j.at("elapsed_seconds").get<double>();
    return rep;
}

void write_residuals_csv(const std::string& path, const RunReport& report) {
    auto out = open_out(path);
    out << "iteration,mean,omega\n";
    for (const auto& it : report.iterations)
        out << it.index << ',' << fmt17(it.mean) << ',' << fmt17(it.omega) << '\n';
}

void write_solution_csv(const std::string& path, const PiecewiseSolution& sol,
                        const RealFn& exact) {
    const double a = sol.boundaries.front();
    const double b = sol.boundaries.back();
    std::vector<double> xs;
    xs.reserve(2001 + sol.boundaries.size());
    for (int i = 0; i <= 2000; ++i) xs.push_back(a + (b - a) * i / 2000.0);
    xs.insert(xs.end(), sol.boundaries.begin(), sol.boundaries.end());
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    auto out = open_out(path);
    out << (exact ? "x,y,y_exact,abs_error\n" : "x,y\n");
    for (double x : xs) {
        const double y = sol.value(x);
        out << fmt17(x) << ',' << fmt17(y);
        if (exact) {
            const double ye = exact(x);
            out << ',' << fmt17(ye) << ',' << fmt17(std::abs(y - ye));
        }
        out << '\n';
    }
}

void write_partitions_csv(const std::string& path, const RunHistory& history) {
    auto out = open_out(path);
    out << "iteration,boundary\n";
    for (const auto& rec : history.records)
        for (double x : rec.boundaries) out << rec.index << ',' << fmt17(x) << '\n';
}

}  // namespace polysinc
