#include "polysinc/analysis.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "polysinc/quadrature.hpp"

namespace polysinc {

ErrorNorms error_norms(const PiecewiseSolution& sol, const RealFn& exact, int n_q) {
    if (!exact) throw std::invalid_argument("error_norms: exact solution required");
    ErrorNorms out;
    auto diff = [&](double x) { return exact(x) - sol.value(x); };
    out.l2 = sinc_quad_l2_norm(diff, sol.boundaries.front(), sol.boundaries.back(), n_q);
    for (int k = 0; k < sol.partition_count(); ++k) {
        out.sup = std::max(
            out.sup, sup_norm_estimate(diff, sol.boundaries[k], sol.boundaries[k + 1], 16));
    }
    return out;
}

namespace {

double lebesgue_term(int m) {
    return std::log(static_cast<double>(m)) / std::numbers::pi + 1.07618;
}

struct FitParams {
    double log_amp;     // ln of the full amplitude A/(2r)^m * L^m
    double log_lambda;  // ln lambda, kept < 0
    double log_delta;   // ln delta
};

double model_value(const FitParams& p, int m, double delta_scale, double leb, int i) {
    return std::exp(p.log_amp + p.log_lambda * m * (i - 1)) +
           delta_scale * std::exp(p.log_delta) * leb;
}

double objective(const FitParams& p, const std::vector<double>& log_means, int m,
                 double delta_scale, double leb) {
    double ss = 0.0;
    for (size_t i = 0; i < log_means.size(); ++i) {
        const double r =
            log_means[i] - std::log(model_value(p, m, delta_scale, leb, static_cast<int>(i) + 1));
        ss += r * r;
    }
    return ss;
}

// Damped Gauss-Newton on the three log-parameters.
bool gauss_newton(FitParams& p, const std::vector<double>& log_means, int m,
                  double delta_scale, double leb) {
    const int n = static_cast<int>(log_means.size());
    double mu = 1e-3;
    double prev = objective(p, log_means, m, delta_scale, leb);
    for (int iter = 0; iter < 200; ++iter) {
        Eigen::MatrixXd J(n, 3);
        Eigen::VectorXd r(n);
        for (int i = 0; i < n; ++i) {
            const double decay = std::exp(p.log_amp + p.log_lambda * m * i);
            const double plateau = delta_scale * std::exp(p.log_delta) * leb;
            const double mv = decay + plateau;
            r(i) = log_means[i] - std::log(mv);
            J(i, 0) = -decay / mv;
            J(i, 1) = -decay * m * i / mv;
            J(i, 2) = -plateau / mv;
        }
        const Eigen::MatrixXd JtJ = J.transpose() * J;
        const Eigen::VectorXd g = J.transpose() * r;
        bool stepped = false;
        for (int damp = 0; damp < 30; ++damp) {
            Eigen::MatrixXd H = JtJ + mu * Eigen::MatrixXd::Identity(3, 3);
            const Eigen::Vector3d step = H.ldlt().solve(-g);
            FitParams trial = p;
            trial.log_amp += step(0);
            trial.log_lambda += step(1);
            trial.log_delta += step(2);
            trial.log_lambda = std::min(trial.log_lambda, -1e-9);  // lambda < 1
            const double val = objective(trial, log_means, m, delta_scale, leb);
            if (std::isfinite(val) && val <= prev) {
                const bool small = (prev - val) < 1e-14 * (1.0 + prev);
                p = trial;
                prev = val;
                mu = std::max(mu * 0.3, 1e-12);
                stepped = true;
                if (small) return true;
                break;
            }
            mu *= 4.0;
        }
        if (!stepped) return true;  // converged to a damping wall
    }
    return false;
}

}  // namespace

double bound_model_value(const BoundFit& fit, int m, double interval_length, int i) {
    const double amp = fit.A / std::pow(2.0 * fit.r, m) * std::pow(interval_length, m);
    return amp * std::pow(fit.lambda, m * (i - 1)) +
           fit.delta_scale * fit.delta * lebesgue_term(m);
}

BoundFit fit_bound_model(const std::vector<double>& means, int m, double interval_length,
                         double delta_scale) {
    if (means.size() < 3) {
        throw FitError("fit_bound_model: need at least 3 iterations of history");
    }
    if (m < 2 || !(interval_length > 0.0) || !(delta_scale > 0.0)) {
        throw FitError("fit_bound_model: invalid m, interval length, or delta scale");
    }
    std::vector<double> log_means;
    log_means.reserve(means.size());
    for (const double v : means) {
        if (!(v > 0.0)) throw FitError("fit_bound_model: mean norms must be positive");
        log_means.push_back(std::log(v));
    }
    const double leb = lebesgue_term(m);

    const double lambda_starts[] = {0.3, 0.5, 0.7, 0.9};
    const double amp_factors[] = {1.0, 10.0};
    FitParams best{};
    double best_val = std::numeric_limits<double>::infinity();
    bool best_converged = false;
    for (const double amp_factor : amp_factors) {
        for (const double lambda0 : lambda_starts) {
            FitParams p;
            p.log_amp = log_means.front() + std::log(amp_factor);
            p.log_lambda = std::log(lambda0);
            // Start the plateau at the last observed mean.
            p.log_delta = log_means.back() - std::log(delta_scale * leb);
            const bool ok = gauss_newton(p, log_means, m, delta_scale, leb);
            const double val = objective(p, log_means, m, delta_scale, leb);
            if (val < best_val) {
                best = p;
                best_val = val;
                best_converged = ok;
            }
        }
    }
    if (!std::isfinite(best_val)) {
        throw FitError("fit_bound_model: no start converged");
    }

    BoundFit fit;
    fit.A = 1.2e5;
    fit.lambda = std::exp(best.log_lambda);
    fit.delta = std::exp(best.log_delta);
    fit.delta_scale = delta_scale;
    fit.residual_of_fit = best_val;
    fit.converged = best_converged;
    // Unfold the single fitted amplitude: A/(2r)^m * L^m = exp(log_amp).
    const double amp_no_len = std::exp(best.log_amp) / std::pow(interval_length, m);
    fit.r = 0.5 * std::pow(fit.A / amp_no_len, 1.0 / m);
    return fit;
}

}  // namespace polysinc
