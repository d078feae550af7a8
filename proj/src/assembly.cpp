#include "polysinc/assembly.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <cassert>
#include <limits>
#include <cmath>
#include <stdexcept>

#include "polysinc/quadrature.hpp"

namespace polysinc {

namespace {

void check_dense_solution(const Eigen::PartialPivLU<Eigen::MatrixXd>& lu,
                          const Eigen::VectorXd& c, int partition_index) {
    const double rcond = lu.rcond();
    if (!c.allFinite() || rcond < 1e-15) {
        throw SolveError("singular collocation system in partition " +
                             std::to_string(partition_index) +
                             " (cond ~ " + std::to_string(1.0 / std::max(rcond, 1e-300)) +
                             ")",
                         partition_index, 1.0 / std::max(rcond, 1e-300));
    }
}

PiecewiseSolution make_solution_shell(const PartitionTree& tree, ProblemKind kind) {
    PiecewiseSolution sol;
    sol.kind = kind;
    sol.boundaries = tree.boundaries;
    sol.bases.reserve(tree.partitions.size());
    for (const auto& grid : tree.partitions) {
        sol.bases.push_back(make_basis(grid));
    }
    sol.coeffs.resize(tree.partitions.size());
    return sol;
}

}  // namespace

PiecewiseSolution solve_ivp1(const ProblemSpec& spec, const PartitionTree& tree) {
    if (spec.kind != ProblemKind::IVP1) {
        throw std::invalid_argument("solve_ivp1: spec.kind must be IVP1");
    }
    PiecewiseSolution sol = make_solution_shell(tree, spec.kind);
    const int K = tree.partition_count();
    double y_left = spec.ya;
    for (int k = 0; k < K; ++k) {
        const LagrangeBasis& basis = sol.bases[k];
        const int m = basis.size();
        const auto& x = basis.grid.points;
        const IndefiniteIntegralMatrix aplus = assemble_a_plus(basis);

        Eigen::MatrixXd M = Eigen::MatrixXd::Zero(m, m);
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);

        // Initial/continuity condition replaces the leftmost collocation row.
        M.row(0) = basis_row(basis, tree.boundaries[k]).transpose();
        rhs(0) = y_left;

        // Integral-form residual at the remaining Sinc points:
        //   c_j + sum_l A+(j,l) p(x_l) c_l = y_left + (A+ Vq)_j.
        for (int j = 1; j < m; ++j) {
            M(j, j) += 1.0;
            for (int l = 0; l < m; ++l) {
                M(j, l) += aplus.entries(j, l) * (spec.p ? spec.p(x[l]) : 0.0);
                rhs(j) += aplus.entries(j, l) * (spec.q ? spec.q(x[l]) : 0.0);
            }
            rhs(j) += y_left;
        }

        assert(M.rows() == m && M.cols() == m);
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(M);
        sol.coeffs[k] = lu.solve(rhs);
        check_dense_solution(lu, sol.coeffs[k], k);
        y_left = basis_row(basis, tree.boundaries[k + 1]).dot(sol.coeffs[k]);
    }
    return sol;
}

PiecewiseSolution solve_ivp2(const ProblemSpec& spec, const PartitionTree& tree) {
    if (spec.kind != ProblemKind::IVP2) {
        throw std::invalid_argument("solve_ivp2: spec.kind must be IVP2");
    }
    if (!spec.f) throw std::invalid_argument("solve_ivp2: source term f is required");
    PiecewiseSolution sol = make_solution_shell(tree, spec.kind);
    const int K = tree.partition_count();
    double y_left = spec.ya;
    double dy_left = spec.dya;
    for (int k = 0; k < K; ++k) {
        const LagrangeBasis& basis = sol.bases[k];
        const int m = basis.size();
        const auto& x = basis.grid.points;
        const double xl = tree.boundaries[k];
        const IndefiniteIntegralMatrix aplus = assemble_a_plus(basis);

        Eigen::VectorXd vf(m), vxf(m);
        for (int l = 0; l < m; ++l) {
            vf(l) = spec.f(x[l]);
            vxf(l) = x[l] * vf(l);
        }
        const Eigen::VectorXd integ_f = aplus.entries * vf;     // (J+ f)(x_j)
        const Eigen::VectorXd integ_xf = aplus.entries * vxf;   // (J+ x f)(x_j)

        Eigen::MatrixXd M = Eigen::MatrixXd::Zero(m, m);
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);

        // Value and derivative conditions at the left boundary replace the
        // leftmost and rightmost collocation rows.
        M.row(0) = basis_row(basis, xl).transpose();
        rhs(0) = y_left;
        M.row(m - 1) = basis_deriv_row(basis, xl, 1).transpose();
        rhs(m - 1) = dy_left;

        // Integral-form residual at the interior Sinc points:
        //   c_j = y_left + (x_j - xl) dy_left - x_j (J+ f)_j + (J+ x f)_j.
        for (int j = 1; j < m - 1; ++j) {
            M(j, j) = 1.0;
            rhs(j) = y_left + (x[j] - xl) * dy_left - x[j] * integ_f(j) + integ_xf(j);
        }

        Eigen::PartialPivLU<Eigen::MatrixXd> lu(M);
        sol.coeffs[k] = lu.solve(rhs);
        check_dense_solution(lu, sol.coeffs[k], k);
        const double xr = tree.boundaries[k + 1];
        y_left = basis_row(basis, xr).dot(sol.coeffs[k]);
        dy_left = eval_basis_deriv(
            basis, std::span<const double>(sol.coeffs[k].data(), sol.coeffs[k].size()),
            xr, 1);
    }
    return sol;
}

PiecewiseSolution solve_bvp(const ProblemSpec& spec, const PartitionTree& tree) {
    if (spec.kind != ProblemKind::BVP) {
        throw std::invalid_argument("solve_bvp: spec.kind must be BVP");
    }
    if (!spec.coef_a) throw std::invalid_argument("solve_bvp: coefficient a(x) is required");
    PiecewiseSolution sol = make_solution_shell(tree, spec.kind);
    const int K = tree.partition_count();

    std::vector<int> offset(K + 1, 0);
    for (int k = 0; k < K; ++k) offset[k + 1] = offset[k] + sol.bases[k].size();
    const int n = offset[K];

    std::vector<Eigen::Triplet<double>> trips;
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    int rows = 0;
    auto add = [&trips](int row, int col, double v) {
        if (v != 0.0) trips.emplace_back(row, col, v);
    };

    for (int k = 0; k < K; ++k) {
        const LagrangeBasis& basis = sol.bases[k];
        const int m = basis.size();
        const auto& x = basis.grid.points;
        const int base = offset[k];

        // Local row 0: left boundary condition (k = 0) or value continuity
        // with the left neighbor at x^{k}.
        {
            const int row = base;
            const double xb = tree.boundaries[k];
            const Eigen::VectorXd u = basis_row(basis, xb);
            for (int l = 0; l < m; ++l) add(row, base + l, u(l));
            if (k == 0) {
                rhs(row) = spec.ya;
            } else {
                const Eigen::VectorXd un = basis_row(sol.bases[k - 1], xb);
                for (int l = 0; l < sol.bases[k - 1].size(); ++l) {
                    add(row, offset[k - 1] + l, -un(l));
                }
            }
            ++rows;
        }

        // Interior collocation rows: differential residual R_D = 0 at the
        // interior Sinc points, expanded as -a y'' - a' y' + b y' + c y = f,
        // optionally scaled by the residual multiplier.
        for (int j = 1; j < m - 1; ++j) {
            const int row = base + j;
            const double xj = x[j];
            const double mult = spec.residual_multiplier ? spec.residual_multiplier(xj) : 1.0;
            const double av = spec.coef_a(xj);
            if (!(av > 0.0)) {
                throw SolveError("coefficient a(x) not positive at collocation point in partition " +
                                     std::to_string(k),
                                 k, 0.0);
            }
            const double apv = spec.a_prime(xj);
            const double bv = spec.coef_b ? spec.coef_b(xj) : 0.0;
            const double cv = spec.coef_c ? spec.coef_c(xj) : 0.0;
            for (int l = 0; l < m; ++l) {
                double v = -av * basis.d2(j, l) + (bv - apv) * basis.d1(j, l);
                if (l == j) v += cv;
                add(row, base + l, mult * v);
            }
            rhs(row) = mult * (spec.f ? spec.f(xj) : 0.0);
            ++rows;
        }

        // Local row m-1: right boundary condition (k = K-1) or derivative
        // continuity with the right neighbor at x^{k+1}.
        {
            const int row = base + m - 1;
            const double xb = tree.boundaries[k + 1];
            if (k == K - 1) {
                const Eigen::VectorXd u = basis_row(basis, xb);
                for (int l = 0; l < m; ++l) add(row, base + l, u(l));
                rhs(row) = spec.yb;
            } else {
                const Eigen::VectorXd du = basis_deriv_row(basis, xb, 1);
                const Eigen::VectorXd dun = basis_deriv_row(sol.bases[k + 1], xb, 1);
                for (int l = 0; l < m; ++l) add(row, base + l, du(l));
                for (int l = 0; l < sol.bases[k + 1].size(); ++l) {
                    add(row, offset[k + 1] + l, -dun(l));
                }
            }
            ++rows;
        }
    }
    assert(rows == n);  // equations == unknowns == sum_k m_k

    // Row equilibration keeps the stiff problems (tiny diffusion, short
    // partitions) within reach of double-precision LU.
    Eigen::VectorXd row_scale = Eigen::VectorXd::Zero(n);
    for (const auto& t : trips) {
        row_scale(t.row()) = std::max(row_scale(t.row()), std::abs(t.value()));
    }
    for (int i = 0; i < n; ++i) {
        if (row_scale(i) == 0.0) {
            throw SolveError("empty equation row in global BVP system", -1,
                             std::numeric_limits<double>::infinity());
        }
    }
    for (auto& t : trips) {
        t = Eigen::Triplet<double>(t.row(), t.col(), t.value() / row_scale(t.row()));
    }
    rhs = rhs.cwiseQuotient(row_scale);

    Eigen::SparseMatrix<double> A(n, n);
    A.setFromTriplets(trips.begin(), trips.end());
    A.makeCompressed();

    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(A);
    if (lu.info() != Eigen::Success) {
        throw SolveError("sparse LU factorization failed for global BVP system", -1,
                         std::numeric_limits<double>::infinity());
    }
    const Eigen::VectorXd c = lu.solve(rhs);
    const double lin_res = (A * c - rhs).cwiseAbs().maxCoeff();
    const double c_scale = 1.0 + c.cwiseAbs().maxCoeff();
    if (!c.allFinite() || lin_res > 1e-6 * c_scale) {
        throw SolveError("global BVP system numerically singular (scaled residual " +
                             std::to_string(lin_res) + ")",
                         -1, lin_res / std::numeric_limits<double>::epsilon());
    }

    for (int k = 0; k < K; ++k) {
        sol.coeffs[k] = c.segment(offset[k], sol.bases[k].size());
    }
    return sol;
}

PiecewiseSolution solve(const ProblemSpec& spec, const PartitionTree& tree) {
    switch (spec.kind) {
        case ProblemKind::IVP1: return solve_ivp1(spec, tree);
        case ProblemKind::IVP2: return solve_ivp2(spec, tree);
        case ProblemKind::BVP: return solve_bvp(spec, tree);
    }
    throw std::invalid_argument("solve: unknown problem kind");
}

double residual_differential(const PiecewiseSolution& sol, const ProblemSpec& spec,
                             double x) {
    double r = 0.0;
    switch (spec.kind) {
        case ProblemKind::IVP1:
            r = sol.deriv(x, 1) + (spec.p ? spec.p(x) : 0.0) * sol.value(x) -
                (spec.q ? spec.q(x) : 0.0);
            break;
        case ProblemKind::IVP2:
            r = -sol.deriv(x, 2) - spec.f(x);
            break;
        case ProblemKind::BVP: {
            const double d2 = sol.deriv(x, 2);
            const double d1 = sol.deriv(x, 1);
            r = -spec.coef_a(x) * d2 + (spec.coef_b ? spec.coef_b(x) : 0.0) * d1 -
                spec.a_prime(x) * d1 + (spec.coef_c ? spec.coef_c(x) : 0.0) * sol.value(x) -
                (spec.f ? spec.f(x) : 0.0);
            break;
        }
    }
    if (spec.residual_multiplier) r *= spec.residual_multiplier(x);
    return r;
}

std::vector<double> residual_noise_floors(const PiecewiseSolution& sol,
                                          const ProblemSpec& spec, int n_q) {
    const int K = sol.partition_count();
    std::vector<double> floors(K);
    for (int k = 0; k < K; ++k) {
        const LagrangeBasis& basis = sol.bases[k];
        // Componentwise perturbations of size eps*max|c| in the stored
        // coefficients pass through the residual evaluation amplified by the
        // absolute row sums of the value/derivative rows, weighted by the
        // same ODE coefficients as the residual itself.
        auto amplification = [&](double x) {
            double w0 = 0.0, w1 = 0.0, w2 = 0.0;
            switch (spec.kind) {
                case ProblemKind::IVP1:
                    w1 = 1.0;
                    w0 = std::abs(spec.p ? spec.p(x) : 0.0);
                    break;
                case ProblemKind::IVP2:
                    w2 = 1.0;
                    break;
                case ProblemKind::BVP:
                    w2 = std::abs(spec.coef_a(x));
                    w1 = std::abs((spec.coef_b ? spec.coef_b(x) : 0.0) - spec.a_prime(x));
                    w0 = std::abs(spec.coef_c ? spec.coef_c(x) : 0.0);
                    break;
            }
            double g = 0.0;
            if (w0 > 0.0) g += w0 * basis_row(basis, x).cwiseAbs().sum();
            if (w1 > 0.0) g += w1 * basis_deriv_row(basis, x, 1).cwiseAbs().sum();
            if (w2 > 0.0) g += w2 * basis_deriv_row(basis, x, 2).cwiseAbs().sum();
            if (spec.residual_multiplier) g *= std::abs(spec.residual_multiplier(x));
            return g;
        };
        const double amp = std::numeric_limits<double>::epsilon() *
                           sol.coeffs[k].cwiseAbs().maxCoeff();
        floors[k] = amp * sinc_quad_l2_norm(amplification, sol.boundaries[k],
                                            sol.boundaries[k + 1], n_q);
    }
    return floors;
}

std::vector<double> residual_norms(const PiecewiseSolution& sol, const ProblemSpec& spec,
                                   int n_q, MarkSignal signal) {
    if (signal == MarkSignal::exact_error && !spec.exact) {
        throw std::invalid_argument(
            "residual_norms: exact_error marking requires spec.exact");
    }
    const int K = sol.partition_count();
    std::vector<double> norms(K);
    for (int k = 0; k < K; ++k) {
        auto f = [&](double x) {
            if (signal == MarkSignal::exact_error) {
                return spec.exact(x) - sol.value(x);
            }
            return residual_differential(sol, spec, x);
        };
        norms[k] = sinc_quad_l2_norm(f, sol.boundaries[k], sol.boundaries[k + 1], n_q);
    }
    return norms;
}

}  // namespace polysinc
