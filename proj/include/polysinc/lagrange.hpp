#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "polysinc/sinc_grid.hpp"

namespace polysinc {

// Lagrange interpolation on the Sinc points of one partition, evaluated in
// the second barycentric form.  The classical g(x)/((x-x_k) g'(x_k)) form is
// unstable for clustered Sinc points in double precision.
struct LagrangeBasis {
    SincGrid grid;
    std::vector<double> weights;  // barycentric weights 1/prod_{l!=j}(x_j - x_l)
    Eigen::MatrixXd d1;           // differentiation matrix, first order
    Eigen::MatrixXd d2;           // second order

    int size() const { return grid.size(); }
};

LagrangeBasis make_basis(const SincGrid& grid);

// Cardinal values u_j(x), j = 0..m-1.  At a node (within 1e-14*(b-a)) the
// row degenerates to the corresponding unit vector.
Eigen::VectorXd basis_row(const LagrangeBasis& basis, double x);

// Row r with r^T data = d^order/dx^order of the interpolant at x, order 1 or 2.
Eigen::VectorXd basis_deriv_row(const LagrangeBasis& basis, double x, int order);

double eval_basis(const LagrangeBasis& basis, std::span<const double> data, double x);
double eval_basis_deriv(const LagrangeBasis& basis, std::span<const double> data,
                        double x, int order);

}  // namespace polysinc
