#pragma once

#include <functional>
#include <vector>

#include "polysinc/adaptive.hpp"
#include "polysinc/problem.hpp"

namespace polysinc {

struct ErrorNorms {
    double l2 = 0.0;
    double sup = 0.0;
};

// L2 norm of (exact - solution) over [a,b] by Sinc quadrature with
// half-count n_q, and a sup estimate over the union of per-partition
// Sinc samples.
ErrorNorms error_norms(const PiecewiseSolution& sol, const RealFn& exact, int n_q = 32);

// Least-squares fit (on the log scale) of the decay model
//   mean_i ~ A/(2r)^m * lambda^{m(i-1)} * L^m + delta_scale * delta * C(m),
// with C(m) = (1/pi) ln(m) + 1.07618, to the per-iteration mean norms.
// A/(2r)^m is a single amplitude degree of freedom; A is reported fixed
// at 1.2e5 and r back-solved, so only lambda and the delta plateau are
// meaningful fit outputs.
struct BoundFit {
    double A = 0.0;
    double r = 0.0;
    double lambda = 0.0;
    double delta = 0.0;
    double delta_scale = 1.0;
    double residual_of_fit = 0.0;  // sum of squared log residuals of the best fit
    bool converged = false;
};

struct FitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

BoundFit fit_bound_model(const std::vector<double>& means, int m, double interval_length,
                         double delta_scale = 1.0);

inline BoundFit fit_bound_model(const RunHistory& history, int m, double interval_length,
                                double delta_scale = 1.0) {
    std::vector<double> means;
    means.reserve(history.records.size());
    for (const auto& rec : history.records) means.push_back(rec.mean);
    return fit_bound_model(means, m, interval_length, delta_scale);
}

// Model value at iteration i (1-based) for a given fit.
double bound_model_value(const BoundFit& fit, int m, double interval_length, int i);

}  // namespace polysinc
