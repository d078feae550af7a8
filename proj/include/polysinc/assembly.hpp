#pragma once

#include "polysinc/problem.hpp"

namespace polysinc {

// Piecewise collocation solves.  IVP kinds march left to right, one dense
// m x m system per partition (the coupling is triangular); the BVP
// assembles one global sparse system over all coefficients.
PiecewiseSolution solve_ivp1(const ProblemSpec& spec, const PartitionTree& tree);
PiecewiseSolution solve_ivp2(const ProblemSpec& spec, const PartitionTree& tree);
PiecewiseSolution solve_bvp(const ProblemSpec& spec, const PartitionTree& tree);

PiecewiseSolution solve(const ProblemSpec& spec, const PartitionTree& tree);

// Differential-form residual R_D of the solution at x (with the
// residual_multiplier applied when present).  Used for refinement for all
// kinds, including the IVP kinds whose solve used the integral form.
double residual_differential(const PiecewiseSolution& sol, const ProblemSpec& spec,
                             double x);

enum class MarkSignal {
    residual,     // R_D(x)
    exact_error,  // y(x) - y_c(x); requires spec.exact
};

// Per-partition L2 norms of the marking signal via Sinc quadrature.
std::vector<double> residual_norms(const PiecewiseSolution& sol, const ProblemSpec& spec,
                                   int n_q = 16,
                                   MarkSignal signal = MarkSignal::residual);

// Per-partition estimate of the smallest residual norm resolvable in double
// precision: componentwise coefficient rounding (eps * max|c|) amplified by
// the absolute value/derivative row sums, weighted like the residual and
// measured with the same quadrature.  Norms at or below this level carry no
// refinement information.
std::vector<double> residual_noise_floors(const PiecewiseSolution& sol,
                                          const ProblemSpec& spec, int n_q = 16);

}  // namespace polysinc
