#include "polysinc/adaptive.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace polysinc {

double geary_statistic(std::span<const double> values) {
    const int K = static_cast<int>(values.size());
    if (K < 2) throw std::invalid_argument("geary_statistic: need at least 2 values");
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / K;
    double mad = 0.0;
    double ss = 0.0;
    for (const double v : values) {
        mad += std::abs(v - mean);
        ss += (v - mean) * (v - mean);
    }
    mad /= K;
    const double s = std::sqrt(ss / (K - 1));
    if (s == 0.0) throw DegenerateSample();
    return mad / s;
}

std::vector<int> mark(const std::vector<double>& norms, double mean, double stddev,
                      double omega) {
    const int K = static_cast<int>(norms.size());
    if (K < 1) throw std::invalid_argument("mark: empty norm list");
    std::vector<int> marked;
    if (K == 1 || stddev <= 0.0) {
        // The init step marks the lone global partition; equal norms give
        // no statistical signal, so split everything.
        marked.resize(K);
        std::iota(marked.begin(), marked.end(), 0);
        return marked;
    }
    for (int j = 0; j < K; ++j) {
        if (norms[j] - mean >= omega * stddev) marked.push_back(j);
    }
    return marked;
}

PartitionTree refine(const PartitionTree& tree, const std::vector<int>& marked, int N) {
    if (marked.empty()) {
        throw std::invalid_argument("refine: marked set must be nonempty");
    }
    const int K = tree.partition_count();
    std::vector<bool> is_marked(K, false);
    for (const int j : marked) {
        if (j < 0 || j >= K) throw std::invalid_argument("refine: marked index out of range");
        is_marked[j] = true;
    }
    const double min_len = 1e-13 * (tree.b() - tree.a());

    PartitionTree out;
    out.point_set = tree.point_set;
    out.boundaries.push_back(tree.a());
    for (int k = 0; k < K; ++k) {
        const double left = tree.boundaries[k];
        const double right = tree.boundaries[k + 1];
        if (!is_marked[k]) {
            out.partitions.push_back(tree.partitions[k]);
            out.boundaries.push_back(right);
            continue;
        }
        // The partition's own Sinc points become partitioning points.
        std::vector<double> cuts;
        cuts.push_back(left);
        cuts.insert(cuts.end(), tree.partitions[k].points.begin(),
                    tree.partitions[k].points.end());
        cuts.push_back(right);
        for (size_t i = 0; i + 1 < cuts.size(); ++i) {
            if (cuts[i + 1] - cuts[i] < min_len) {
                throw std::runtime_error(
                    "refine: degenerate child partition (length below resolution)");
            }
            SincGrid child = sinc_points(cuts[i], cuts[i + 1], N);
            out.point_set.insert(child.points.begin(), child.points.end());
            out.partitions.push_back(std::move(child));
            out.boundaries.push_back(cuts[i + 1]);
        }
    }
    return out;
}

RunHistory run(const ProblemSpec& spec, const RunOptions& options) {
    if (!(options.eps_stop > 0.0)) {
        throw std::invalid_argument("run: eps_stop must be positive");
    }
    RunHistory history;
    PartitionTree tree = PartitionTree::initial(spec.a, spec.b, options.N);
    int stagnant_streak = 0;

    for (int i = 1; i <= options.max_iter; ++i) {
        PiecewiseSolution sol;
        try {
            sol = solve(spec, tree);
        } catch (const SolveError& e) {
            throw SolveError(std::string(e.what()) + " (iteration " + std::to_string(i) + ")",
                             e.partition_index, e.cond_estimate);
        }
        const std::vector<double> norms =
            residual_norms(sol, spec, options.n_q, options.signal);
        const int K = static_cast<int>(norms.size());

        IterationRecord rec;
        rec.index = i;
        rec.partition_count = K;
        rec.norms = norms;
        rec.mean = std::accumulate(norms.begin(), norms.end(), 0.0) / K;
        rec.boundaries = tree.boundaries;
        rec.total_points = static_cast<long long>(K) * (2 * options.N + 1);
        if (K >= 2) {
            double ss = 0.0;
            for (const double v : norms) ss += (v - rec.mean) * (v - rec.mean);
            rec.stddev = std::sqrt(ss / (K - 1));
            if (rec.stddev > 0.0) {
                rec.omega = geary_statistic(norms);
            } else {
                rec.degenerate = true;
            }
        } else {
            rec.degenerate = true;
        }

        const bool threshold = rec.mean <= options.eps_stop;
        if (!threshold && i > 1) {
            if (rec.mean > 0.99 * history.records.back().mean) {
                ++stagnant_streak;
            } else {
                stagnant_streak = 0;
            }
        }
        const bool stagnated = stagnant_streak >= 3;
        const bool out_of_budget = (i == options.max_iter);

        if (threshold || stagnated || out_of_budget) {
            rec.point_set_size = static_cast<long long>(tree.point_set.size());
            rec.boundary_set_size = static_cast<long long>(tree.boundaries.size());
            history.records.push_back(std::move(rec));
            history.final_solution = std::move(sol);
            history.final_tree = std::move(tree);
            history.reason = threshold    ? StopReason::threshold_met
                             : stagnated  ? StopReason::stagnation
                                          : StopReason::max_iterations;
            return history;
        }

        rec.marked = mark(norms, rec.mean, rec.stddev, rec.degenerate ? 0.0 : rec.omega);
        // Splitting a partition whose norm is explained by coefficient
        // rounding only chases noise (and wrecks the solve on the resulting
        // micro-partitions), so such partitions are not refined further.
        {
            // The floor model underestimates the marching/solve noise by a
            // couple of orders of magnitude; informative marks sit another
            // three orders above that (measured across the benchmark set).
            constexpr double kFloorSafety = 1e3;
            const std::vector<double> floors = residual_noise_floors(sol, spec, options.n_q);
            std::vector<int> informative;
            for (const int j : rec.marked) {
                if (norms[j] > kFloorSafety * floors[j]) informative.push_back(j);
            }
            rec.marked = std::move(informative);
        }
        const bool at_floor = rec.marked.empty();
        PartitionTree refined;
        if (!at_floor) {
            try {
                refined = refine(tree, rec.marked, options.N);
            } catch (const std::runtime_error&) {
                rec.marked.clear();
            }
        }
        if (rec.marked.empty()) {
            // Every statistically marked partition is at the double-precision
            // measurement or length floor; the run has flattened out as far
            // as this arithmetic allows.
            rec.point_set_size = static_cast<long long>(tree.point_set.size());
            rec.boundary_set_size = static_cast<long long>(tree.boundaries.size());
            history.records.push_back(std::move(rec));
            history.final_solution = std::move(sol);
            history.final_tree = std::move(tree);
            history.reason = StopReason::stagnation;
            return history;
        }
        tree = std::move(refined);
        rec.point_set_size = static_cast<long long>(tree.point_set.size());
        rec.boundary_set_size = static_cast<long long>(tree.boundaries.size());
        history.records.push_back(std::move(rec));
        history.final_solution = std::move(sol);
    }
    return history;  // unreachable; loop always returns at max_iter
}

}  // namespace polysinc
