#include "polysinc/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace polysinc {

GaussRule gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    // Newton iteration from the Chebyshev initial guess.
    for (int i = 0; i < n; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            if (n == 1) p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double pn = (n == 1) ? x : p1;
            const double pn1 = (n == 1) ? 1.0 : p0;
            dp = n * (pn1 - x * pn) / (1.0 - x * x);
            const double dx = pn / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[n - 1 - i] = x;
        rule.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

double sinc_quad_l2_norm(const std::function<double(double)>& f, double a, double b,
                         int n_q) {
    const SincGrid grid = sinc_points(a, b, n_q);
    double s = 0.0;
    for (const double xk : grid.points) {
        const double fx = f(xk);
        // 1/phi'(x) = (x-a)(b-x)/(b-a)
        s += fx * fx * (xk - a) * (b - xk) / (b - a);
    }
    return std::sqrt(grid.h * s);
}

double sup_norm_estimate(const std::function<double(double)>& f, double a, double b,
                         int n_q) {
    const SincGrid grid = sinc_points(a, b, n_q);
    double s = 0.0;
    for (const double xk : grid.points) {
        s = std::max(s, std::abs(f(xk)));
    }
    return s;
}

IndefiniteIntegralMatrix assemble_a_plus(const LagrangeBasis& basis) {
    const int m = basis.size();
    IndefiniteIntegralMatrix mat;
    mat.basis = basis;
    mat.entries = Eigen::MatrixXd::Zero(m, m);
    // Each entry is the integral of a polynomial of degree m-1, so a rule
    // with ceil(m/2)+1 nodes is exact.
    const GaussRule rule = gauss_legendre((m + 1) / 2 + 1);
    const double a = basis.grid.a;
    for (int k = 0; k < m; ++k) {
        const double xk = basis.grid.points[k];
        const double half = 0.5 * (xk - a);
        const double mid = 0.5 * (xk + a);
        for (size_t q = 0; q < rule.nodes.size(); ++q) {
            const double t = mid + half * rule.nodes[q];
            const Eigen::VectorXd row = basis_row(basis, t);
            mat.entries.row(k) += (half * rule.weights[q]) * row.transpose();
        }

        // Restore the row-sum identity sum_j entries(k,j) = x_k - a (the
        // cardinal functions sum to one).  Entries grow with the Lebesgue
        // function -- above 1e13*(b-a) for m = 17 -- so the row sum is pure
        // cancellation and the accumulated defect has to be measured with
        // compensated summation and folded into the smallest entry, where
        // the re-rounding is harmless.
        double s = 0.0, comp = 0.0;
        int j_min = 0;
        for (int j = 0; j < m; ++j) {
            const double v = mat.entries(k, j);
            const double t = s + v;
            comp += (std::abs(s) >= std::abs(v)) ? (s - t) + v : (v - t) + s;
            s = t;
            if (std::abs(v) < std::abs(mat.entries(k, j_min))) j_min = j;
        }
        mat.entries(k, j_min) += (xk - a) - s - comp;
    }
    return mat;
}

double indefinite_integral(const IndefiniteIntegralMatrix& mat,
                           std::span<const double> data, double x) {
    const int m = mat.basis.size();
    if (static_cast<int>(data.size()) != m) {
        throw std::invalid_argument("indefinite_integral: data length must equal m");
    }
    const Eigen::VectorXd values =
        mat.entries * Eigen::Map<const Eigen::VectorXd>(data.data(), m);
    const Eigen::VectorXd row = basis_row(mat.basis, x);
    return row.dot(values);
}

}  // namespace polysinc
