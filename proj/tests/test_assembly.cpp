#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "polysinc/assembly.hpp"
#include "polysinc/analysis.hpp"
#include "polysinc/problems.hpp"
#include "polysinc/quadrature.hpp"

using namespace polysinc;

// uniform K-partition tree, for tests that control the mesh directly
static PartitionTree uniform_tree(double a, double b, int K, int N) {
    PartitionTree tree;
    tree.boundaries.push_back(a);
    for (int k = 1; k <= K; ++k) tree.boundaries.push_back(a + (b - a) * k / K);
    for (int k = 0; k < K; ++k) {
        SincGrid g = sinc_points(tree.boundaries[k], tree.boundaries[k + 1], N);
        tree.point_set.insert(g.points.begin(), g.points.end());
        tree.partitions.push_back(std::move(g));
    }
    return tree;
}

TEST_CASE("first-order IVP: initial condition and collocation equations") {
    ProblemSpec spec;
    spec.kind = ProblemKind::IVP1;
    spec.p = [](double) { return 20.0; };
    spec.q = [](double) { return 0.0; };
    spec.ya = 1.0;
    const PartitionTree tree = PartitionTree::initial(0.0, 1.0, 2);
    const PiecewiseSolution sol = solve(spec, tree);

    CHECK(sol.value(0.0) == doctest::Approx(1.0).epsilon(1e-12));

    // integral-form residual at the collocation nodes j=1..4:
    // c_j - ya + 20*(A+ V y_c)_j = 0
    const IndefiniteIntegralMatrix aplus = assemble_a_plus(sol.bases[0]);
    const Eigen::VectorXd integ = aplus.entries * sol.coeffs[0];
    for (int j = 1; j < 5; ++j) {
        CHECK(std::abs(sol.coeffs[0](j) - 1.0 + 20.0 * integ(j)) <= 1e-11);
    }
}

TEST_CASE("first-order IVP: constant solution reproduced exactly") {
    ProblemSpec spec;
    spec.kind = ProblemKind::IVP1;
    spec.p = [](double) { return 0.0; };
    spec.q = [](double) { return 0.0; };
    spec.ya = 3.0;
    const PiecewiseSolution sol = solve(spec, uniform_tree(0.0, 1.0, 3, 2));
    for (int i = 0; i <= 20; ++i) {
        CHECK(sol.value(i / 20.0) == doctest::Approx(3.0).epsilon(1e-12));
    }
}

TEST_CASE("second-order IVP: linear and quadratic exact solutions") {
    ProblemSpec spec;
    spec.kind = ProblemKind::IVP2;
    spec.f = [](double) { return 0.0; };
    spec.ya = 1.0;
    spec.dya = 2.0;
    const PiecewiseSolution lin = solve(spec, PartitionTree::initial(0.0, 1.0, 2));
    for (int i = 0; i <= 20; ++i) {
        const double x = i / 20.0;
        CHECK(lin.value(x) == doctest::Approx(1.0 + 2.0 * x).epsilon(1e-11));
    }

    spec.f = [](double) { return -2.0; };  // -y'' = -2 with zero data -> y = x^2
    spec.ya = 0.0;
    spec.dya = 0.0;
    const PiecewiseSolution quad = solve(spec, uniform_tree(0.0, 1.0, 2, 2));
    for (int i = 0; i <= 20; ++i) {
        const double x = i / 20.0;
        CHECK(std::abs(quad.value(x) - x * x) <= 1e-10);
    }
}

TEST_CASE("second-order IVP: hanging bar initial data") {
    const BenchmarkEntry e = builtin("hanging_bar");
    const PiecewiseSolution sol = solve(e.spec, PartitionTree::initial(0.0, 1.0, 3));
    CHECK(sol.value(0.0) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(sol.deriv(0.0, 1) == doctest::Approx(-1.0).epsilon(1e-10));
}

TEST_CASE("BVP: linear and parabolic exact solutions") {
    ProblemSpec spec;
    spec.kind = ProblemKind::BVP;
    spec.coef_a = [](double) { return 1.0; };
    spec.coef_a_prime = [](double) { return 0.0; };
    spec.f = [](double) { return 0.0; };
    spec.ya = 0.0;
    spec.yb = 1.0;
    const PiecewiseSolution lin = solve(spec, uniform_tree(0.0, 1.0, 2, 2));
    for (int i = 0; i <= 20; ++i) {
        CHECK(std::abs(lin.value(i / 20.0) - i / 20.0) <= 1e-11);
    }

    spec.f = [](double) { return 2.0; };  // -y'' = 2, y(0)=y(1)=0 -> x(1-x)
    spec.yb = 0.0;
    const PiecewiseSolution par = solve(spec, uniform_tree(0.0, 1.0, 3, 2));
    for (int i = 0; i <= 20; ++i) {
        const double x = i / 20.0;
        CHECK(std::abs(par.value(x) - x * (1.0 - x)) <= 1e-10);
    }
}

TEST_CASE("BVP: boundary conditions enforced") {
    const BenchmarkEntry e = builtin("layer_log");
    const PiecewiseSolution sol = solve(e.spec, uniform_tree(0.0, 1.0, 4, 2));
    CHECK(std::abs(sol.value(0.0)) <= 1e-12);
    CHECK(std::abs(sol.value(1.0)) <= 1e-12);
}

TEST_CASE("residual norms") {
    // exact polynomial solution: all norms vanish
    ProblemSpec par;
    par.kind = ProblemKind::BVP;
    par.coef_a = [](double) { return 1.0; };
    par.coef_a_prime = [](double) { return 0.0; };
    par.f = [](double) { return 2.0; };
    const PiecewiseSolution psol = solve(par, uniform_tree(0.0, 1.0, 3, 2));
    for (const double n : residual_norms(psol, par)) CHECK(n <= 1e-9);

    // one-partition relaxation: differential residual is large
    ProblemSpec relax = builtin("relaxation").spec;
    const PiecewiseSolution rsol = solve(relax, PartitionTree::initial(0.0, 1.0, 2));
    const std::vector<double> rnorms = residual_norms(rsol, relax);
    REQUIRE(rnorms.size() == 1);
    CHECK(rnorms[0] > 1e-2);
    // brute-force comparison with direct quadrature of y' + 20 y
    const double direct = sinc_quad_l2_norm(
        [&](double x) { return rsol.deriv(x, 1) + 20.0 * rsol.value(x); }, 0.0, 1.0, 16);
    CHECK(rnorms[0] == doctest::Approx(direct).epsilon(1e-12));

    // all-zero problem: zero norms
    ProblemSpec zero;
    zero.kind = ProblemKind::BVP;
    zero.coef_a = [](double) { return 1.0; };
    zero.coef_a_prime = [](double) { return 0.0; };
    zero.f = [](double) { return 0.0; };
    const PiecewiseSolution zsol = solve(zero, uniform_tree(0.0, 1.0, 2, 2));
    for (const double n : residual_norms(zsol, zero)) CHECK(n <= 1e-13);
}

TEST_CASE("exact-error marking signal") {
    ProblemSpec spec = builtin("relaxation").spec;
    const PiecewiseSolution sol = solve(spec, uniform_tree(0.0, 1.0, 2, 2));
    const std::vector<double> en =
        residual_norms(sol, spec, 16, MarkSignal::exact_error);
    REQUIRE(en.size() == 2);
    for (const double n : en) CHECK(n > 0.0);
    ProblemSpec no_exact = spec;
    no_exact.exact = nullptr;
    CHECK_THROWS(residual_norms(sol, no_exact, 16, MarkSignal::exact_error));
}

TEST_CASE("polynomial exactness across kinds and random trees") {
    std::mt19937 rng(4242);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    for (int trial = 0; trial < 10; ++trial) {
        const int N = (trial % 2 == 0) ? 2 : 3;
        const int m = 2 * N + 1;
        const int K = 1 + trial % 4;

        // BVP with polynomial exact solution of degree <= m-3
        std::vector<double> p(m - 2);
        for (double& c : p) c = coef(rng);
        auto poly = [p](double x) {
            double v = 0.0;
            for (int d = static_cast<int>(p.size()) - 1; d >= 0; --d) v = v * x + p[d];
            return v;
        };
        auto dpoly = [p](double x) {
            double v = 0.0;
            for (int d = static_cast<int>(p.size()) - 1; d >= 1; --d)
                v = v * x + d * p[d];
            return v;
        };
        auto d2poly = [p](double x) {
            double v = 0.0;
            for (int d = static_cast<int>(p.size()) - 1; d >= 2; --d)
                v = v * x + d * (d - 1) * p[d];
            return v;
        };
        ProblemSpec bvp;
        bvp.kind = ProblemKind::BVP;
        bvp.coef_a = [](double) { return 1.0; };
        bvp.coef_a_prime = [](double) { return 0.0; };
        bvp.coef_b = [](double x) { return x; };
        bvp.coef_c = [](double) { return 1.0; };
        bvp.f = [=](double x) { return -d2poly(x) + x * dpoly(x) + poly(x); };
        bvp.ya = poly(0.0);
        bvp.yb = poly(1.0);
        const PiecewiseSolution bsol = solve(bvp, uniform_tree(0.0, 1.0, K, N));
        for (int i = 0; i <= 50; ++i) {
            const double x = i / 50.0;
            CHECK(std::abs(bsol.value(x) - poly(x)) <= 1e-9);
        }

        // IVP1 with polynomial exact solution of degree <= m-2
        std::vector<double> q(m - 1);
        for (double& c : q) c = coef(rng);
        auto qoly = [q](double x) {
            double v = 0.0;
            for (int d = static_cast<int>(q.size()) - 1; d >= 0; --d) v = v * x + q[d];
            return v;
        };
        auto dqoly = [q](double x) {
            double v = 0.0;
            for (int d = static_cast<int>(q.size()) - 1; d >= 1; --d)
                v = v * x + d * q[d];
            return v;
        };
        ProblemSpec ivp1;
        ivp1.kind = ProblemKind::IVP1;
        ivp1.p = [](double) { return 2.0; };
        ivp1.q = [=](double x) { return dqoly(x) + 2.0 * qoly(x); };
        ivp1.ya = qoly(0.0);
        const PiecewiseSolution isol = solve(ivp1, uniform_tree(0.0, 1.0, K, N));
        for (int i = 0; i <= 50; ++i) {
            const double x = i / 50.0;
            CHECK(std::abs(isol.value(x) - qoly(x)) <= 1e-9);
        }
    }
}

TEST_CASE("continuity at interior boundaries") {
    for (const char* id : {"layer_log", "layer_right", "relaxation", "hanging_bar"}) {
        const BenchmarkEntry e = builtin(id);
        const int N = (e.m - 1) / 2;
        const PiecewiseSolution sol = solve(e.spec, uniform_tree(e.spec.a, e.spec.b, 5, N));
        const double scale = 1.0 + sol.max_coeff();
        for (size_t k = 1; k + 1 < sol.boundaries.size(); ++k) {
            const double xb = sol.boundaries[k];
            const Eigen::VectorXd ul = basis_row(sol.bases[k - 1], xb);
            const Eigen::VectorXd ur = basis_row(sol.bases[k], xb);
            const double jump = std::abs(ul.dot(sol.coeffs[k - 1]) - ur.dot(sol.coeffs[k]));
            CHECK(jump <= 1e-9 * scale);
            if (e.spec.kind != ProblemKind::IVP1) {
                const double dl = eval_basis_deriv(
                    sol.bases[k - 1],
                    std::span<const double>(sol.coeffs[k - 1].data(), sol.coeffs[k - 1].size()),
                    xb, 1);
                const double dr = eval_basis_deriv(
                    sol.bases[k],
                    std::span<const double>(sol.coeffs[k].data(), sol.coeffs[k].size()),
                    xb, 1);
                CHECK(std::abs(dl - dr) <= 1e-9 * scale * 10.0);
            }
        }
    }
}

TEST_CASE("a fine uniform mesh resolves the boundary layer") {
    // coarse uniform meshes are not monotone on layer problems (splitting can
    // move Sinc points away from the layer), but once the mesh is fine enough
    // to resolve it the error collapses
    const BenchmarkEntry e = builtin("layer_log");
    const double coarse =
        error_norms(solve(e.spec, uniform_tree(0.0, 1.0, 1, 2)), e.spec.exact).l2;
    const double fine =
        error_norms(solve(e.spec, uniform_tree(0.0, 1.0, 64, 2)), e.spec.exact).l2;
    CHECK(coarse > 1e-1);
    CHECK(fine < 2e-3);
    CHECK(fine < 0.01 * coarse);
}

TEST_CASE("noise floors are positive and far below genuine residuals") {
    const BenchmarkEntry e = builtin("relaxation");
    const PiecewiseSolution sol = solve(e.spec, PartitionTree::initial(0.0, 1.0, 2));
    const std::vector<double> norms = residual_norms(sol, e.spec);
    const std::vector<double> floors = residual_noise_floors(sol, e.spec);
    REQUIRE(floors.size() == norms.size());
    CHECK(floors[0] > 0.0);
    CHECK(norms[0] > 1e6 * floors[0]);
}
