#pragma once

#include <span>
#include <vector>

#include "polysinc/assembly.hpp"
#include "polysinc/problem.hpp"

namespace polysinc {

struct DegenerateSample : std::runtime_error {
    DegenerateSample() : std::runtime_error("degenerate sample: zero variance") {}
};

// Ratio of the mean absolute deviation to the sample standard deviation
// (divisor K-1).  Bounded above by sqrt((K-1)/K); tends to sqrt(2/pi) for
// normal samples.  Throws DegenerateSample when the variance vanishes.
double geary_statistic(std::span<const double> values);

// Marked indices {j : norm_j - mean >= omega * s}.  The degenerate cases
// (K = 1, zero variance) mark every partition.
std::vector<int> mark(const std::vector<double>& norms, double mean, double stddev,
                      double omega);

// Split each marked partition at its own Sinc points (m+1 children), give
// every child a fresh 2N+1 grid, and accumulate the new points into S.
PartitionTree refine(const PartitionTree& tree, const std::vector<int>& marked, int N);

struct IterationRecord {
    int index = 0;  // 1-based iteration number
    int partition_count = 0;
    std::vector<double> norms;
    double mean = 0.0;
    double stddev = 0.0;   // sample std dev; meaningless when degenerate
    double omega = 0.0;    // Geary statistic; meaningless when degenerate
    bool degenerate = false;  // K = 1 or zero variance
    std::vector<int> marked;  // empty on the terminating iteration
    std::vector<double> boundaries;
    long long total_points = 0;      // n_i = sum_k m_k
    long long point_set_size = 0;    // |S| after this iteration's refine
    long long boundary_set_size = 0; // |P| after this iteration's refine
};

enum class StopReason { threshold_met, max_iterations, stagnation };

struct RunHistory {
    std::vector<IterationRecord> records;
    PiecewiseSolution final_solution;
    PartitionTree final_tree;  // carries S and P
    StopReason reason = StopReason::max_iterations;

    int iterations() const { return static_cast<int>(records.size()); }
};

struct RunOptions {
    int N = 2;
    double eps_stop = 1e-6;
    int max_iter = 30;
    int n_q = 16;  // quadrature half-count for the per-partition norms
    MarkSignal signal = MarkSignal::residual;
};

// The greedy SOLVE -> ESTIMATE -> MARK -> REFINE loop.  Iteration 1 solves
// on the single global partition and marks it unconditionally; later
// iterations use the statistical rule.  Stops when the mean norm falls to
// eps_stop, the iteration budget runs out, or the mean stagnates
// (> 0.99 x previous mean for 3 consecutive iterations).
RunHistory run(const ProblemSpec& spec, const RunOptions& options);

}  // namespace polysinc
