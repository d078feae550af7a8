#pragma once

#include <Eigen/Dense>
#include <functional>
#include <span>

#include "polysinc/lagrange.hpp"
#include "polysinc/sinc_grid.hpp"

namespace polysinc {

// Gauss-Legendre nodes and weights on [-1,1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
GaussRule gauss_legendre(int n);

// Sinc quadrature approximation of the L2 norm:
//   ||f||^2 ~ h * sum_k f(x_k)^2 / phi'(x_k),
// with 2*N_q+1 Sinc points on (a,b).
double sinc_quad_l2_norm(const std::function<double(double)>& f, double a, double b,
                         int n_q);

// max |f| over the 2*N_q+1 Sinc points; a lower bound on the true supremum.
double sup_norm_estimate(const std::function<double(double)>& f, double a, double b,
                         int n_q);

// Collocation matrix of indefinite integrals of the Lagrange basis:
//   entries(k,j) = integral_a^{x_k} u_j(x) dx    (unit weight).
// Turns indefinite integration into a matrix-vector product.
struct IndefiniteIntegralMatrix {
    LagrangeBasis basis;
    Eigen::MatrixXd entries;
};

IndefiniteIntegralMatrix assemble_a_plus(const LagrangeBasis& basis);

// Poly-Sinc approximation of integral_a^x of the interpolant of `data`:
// L(x)^T * A+ * data.
double indefinite_integral(const IndefiniteIntegralMatrix& mat,
                           std::span<const double> data, double x);

}  // namespace polysinc
