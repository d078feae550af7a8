#include "polysinc/lagrange.hpp"

#include <cmath>
#include <stdexcept>

namespace polysinc {

LagrangeBasis make_basis(const SincGrid& grid) {
    const int m = grid.size();
    LagrangeBasis basis;
    basis.grid = grid;
    basis.weights.resize(m);
    const auto& x = grid.points;
    for (int j = 0; j < m; ++j) {
        double w = 1.0;
        for (int l = 0; l < m; ++l) {
            if (l != j) w /= (x[j] - x[l]);
        }
        basis.weights[j] = w;
    }

    // Differentiation matrices from the barycentric weights:
    //   D1[j][l] = (w_l/w_j)/(x_j - x_l),  D1[j][j] = -sum_{l!=j} D1[j][l],
    // and Welfert's recursion for the second order.
    basis.d1.resize(m, m);
    for (int j = 0; j < m; ++j) {
        double diag = 0.0;
        for (int l = 0; l < m; ++l) {
            if (l == j) continue;
            const double v = (basis.weights[l] / basis.weights[j]) / (x[j] - x[l]);
            basis.d1(j, l) = v;
            diag -= v;
        }
        basis.d1(j, j) = diag;
    }
    basis.d2.resize(m, m);
    for (int j = 0; j < m; ++j) {
        double diag = 0.0;
        for (int l = 0; l < m; ++l) {
            if (l == j) continue;
            const double v = 2.0 * basis.d1(j, l) * (basis.d1(j, j) - 1.0 / (x[j] - x[l]));
            basis.d2(j, l) = v;
            diag -= v;
        }
        basis.d2(j, j) = diag;
    }
    return basis;
}

Eigen::VectorXd basis_row(const LagrangeBasis& basis, double x) {
    const int m = basis.size();
    const auto& nodes = basis.grid.points;
    const double node_tol = 1e-14 * basis.grid.length();
    Eigen::VectorXd row = Eigen::VectorXd::Zero(m);
    for (int j = 0; j < m; ++j) {
        if (std::abs(x - nodes[j]) <= node_tol) {
            row(j) = 1.0;
            return row;
        }
    }
    double denom = 0.0;
    for (int j = 0; j < m; ++j) {
        const double t = basis.weights[j] / (x - nodes[j]);
        row(j) = t;
        denom += t;
    }
    row /= denom;
    return row;
}

Eigen::VectorXd basis_deriv_row(const LagrangeBasis& basis, double x, int order) {
    if (order != 1 && order != 2) {
        throw std::invalid_argument("basis_deriv_row: order must be 1 or 2");
    }
    // The derivative of the interpolant is itself a polynomial of lower
    // degree, so interpolating D^order * data at the nodes reproduces it.
    const Eigen::VectorXd u = basis_row(basis, x);
    const Eigen::MatrixXd& d = (order == 1) ? basis.d1 : basis.d2;
    return d.transpose() * u;
}

double eval_basis(const LagrangeBasis& basis, std::span<const double> data, double x) {
    if (static_cast<int>(data.size()) != basis.size()) {
        throw std::invalid_argument("eval_basis: data length must equal grid size");
    }
    const Eigen::VectorXd row = basis_row(basis, x);
    double s = 0.0;
    for (int j = 0; j < basis.size(); ++j) s += row(j) * data[j];
    return s;
}

double eval_basis_deriv(const LagrangeBasis& basis, std::span<const double> data,
                        double x, int order) {
    if (static_cast<int>(data.size()) != basis.size()) {
        throw std::invalid_argument("eval_basis_deriv: data length must equal grid size");
    }
    const int m = basis.size();
    const auto& nodes = basis.grid.points;
    // Differentiating data with a large affine component amplifies rounding
    // by ~|data|*||D||, which grows like 1/length^order on small partitions.
    // The line through the end nodes differentiates exactly, so take it out
    // first and add its derivative back.
    const double slope = (data[m - 1] - data[0]) / (nodes[m - 1] - nodes[0]);
    const Eigen::VectorXd row = basis_deriv_row(basis, x, order);
    double s = 0.0;
    for (int j = 0; j < m; ++j) {
        s += row(j) * (data[j] - data[0] - slope * (nodes[j] - nodes[0]));
    }
    return order == 1 ? s + slope : s;
}

}  // namespace polysinc
