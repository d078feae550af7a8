#include "polysinc/sinc_grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace polysinc {

double phi(double x, double a, double b) {
    if (!(x > a && x < b)) {
        throw std::domain_error("phi: x must lie strictly inside (a,b)");
    }
    return std::log((x - a) / (b - x));
}

double phi_prime(double x, double a, double b) {
    if (!(x > a && x < b)) {
        throw std::domain_error("phi_prime: x must lie strictly inside (a,b)");
    }
    return (b - a) / ((x - a) * (b - x));
}

namespace {

SincGrid build_grid(double a, double b, int N, double h) {
    if (!(b > a)) {
        throw std::invalid_argument("sinc_points: interval must satisfy b > a");
    }
    if (N < 1) {
        throw std::invalid_argument("sinc_points: N must be >= 1");
    }
    SincGrid g;
    g.a = a;
    g.b = b;
    g.N = N;
    g.h = h;
    g.points.resize(2 * N + 1);
    g.points[N] = 0.5 * (a + b);
    // Mirror the k>0 points so the symmetry x_k + x_{-k} = a+b is exact.
    for (int k = 1; k <= N; ++k) {
        const double t = std::exp(k * h);
        const double xk = (a + b * t) / (1.0 + t);
        g.points[N + k] = xk;
        g.points[N - k] = a + b - xk;
    }
    return g;
}

}  // namespace

SincGrid sinc_points(double a, double b, int N) {
    const double h = std::numbers::pi * std::sqrt(2.0 / N);
    return build_grid(a, b, N, h);
}

SincGrid sinc_points(double a, double b, int N, double d, double beta) {
    if (!(d > 0.0) || !(beta > 0.0)) {
        throw std::invalid_argument("sinc_points: d and beta must be positive");
    }
    const double h = std::sqrt(std::numbers::pi * d / (beta * N));
    return build_grid(a, b, N, h);
}

}  // namespace polysinc
