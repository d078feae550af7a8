#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "polysinc/lagrange.hpp"
#include "polysinc/sinc_grid.hpp"

namespace polysinc {

using RealFn = std::function<double(double)>;

enum class ProblemKind {
    IVP1,  // y' + p(x) y = q(x),  y(a) = ya            (integral-form solve)
    IVP2,  // -y'' = f(x),  y(a) = ya, y'(a) = dya      (integral-form solve)
    BVP,   // -(a(x) y')' + b(x) y' + c(x) y = f(x),  y(a) = ya, y(b) = yb
};

struct ProblemSpec {
    ProblemKind kind = ProblemKind::BVP;
    double a = 0.0;
    double b = 1.0;

    // IVP1 coefficients.
    RealFn p, q;

    // BVP coefficients; coef_a must be positive on (a,b).  If
    // coef_a_prime is absent, a central difference with step
    // 1e-7*(b-a) is used in the expanded residual.
    RealFn coef_a, coef_b, coef_c, coef_a_prime;

    // Source term (IVP2 and BVP).
    RealFn f;

    double ya = 0.0;
    double yb = 0.0;
    double dya = 0.0;

    // Scales both the collocation equations and the refinement residual
    // (removes integrable singularities of f, e.g. factor x or sqrt(x)).
    RealFn residual_multiplier;

    RealFn exact;  // optional closed-form solution

    double a_prime(double x) const;
};

// Ordered non-overlapping partitions tiling [a,b], each carrying its own
// Sinc grid, plus the accumulated point set S and boundary set P.
struct PartitionTree {
    std::vector<double> boundaries;    // x^0 = a < ... < x^K = b
    std::vector<SincGrid> partitions;  // K grids, grid k inside [x^{k-1}, x^k]
    std::set<double> point_set;        // S: every Sinc point ever generated

    int partition_count() const { return static_cast<int>(partitions.size()); }
    double a() const { return boundaries.front(); }
    double b() const { return boundaries.back(); }

    static PartitionTree initial(double a, double b, int N);
};

struct PiecewiseSolution {
    std::vector<double> boundaries;
    std::vector<LagrangeBasis> bases;     // per partition
    std::vector<Eigen::VectorXd> coeffs;  // c_{j,k}, per partition
    ProblemKind kind = ProblemKind::BVP;

    int partition_count() const { return static_cast<int>(bases.size()); }

    // Right-open partition selection; the last partition is closed.
    int find_partition(double x) const;

    double value(double x) const;
    double deriv(double x, int order) const;

    double max_coeff() const;
};

struct SolveError : std::runtime_error {
    SolveError(const std::string& msg, int partition_index, double cond_estimate)
        : std::runtime_error(msg),
          partition_index(partition_index),
          cond_estimate(cond_estimate) {}
    int partition_index;   // -1 when the failure is not partition-local
    double cond_estimate;
};

}  // namespace polysinc
