#include "polysinc/special_functions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace polysinc::special {

namespace {

constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
constexpr double kEps = 1e-16;

// Maclaurin series, safe for |x| <= 2 (no significant cancellation there).
double erf_series(double x) {
    const double x2 = x * x;
    double term = x;
    double sum = x;
    for (int k = 1; k < 200; ++k) {
        term *= -x2 / k;
        sum += term / (2.0 * k + 1.0);
        if (std::abs(term) < kEps * std::abs(sum)) break;
    }
    return sum * 2.0 / std::sqrt(std::numbers::pi);
}

// Continued fraction for erfc(x) e^{x^2}, x > 0 (Lentz).
double erfc_cf_scaled(double x) {
    const double tiny = 1e-300;
    double f = x;
    double c = f;
    double d = 0.0;
    for (int k = 1; k < 300; ++k) {
        const double ak = 0.5 * k;
        d = x + ak * d;
        if (d == 0.0) d = tiny;
        c = x + ak / c;
        if (c == 0.0) c = tiny;
        d = 1.0 / d;
        const double delta = c * d;
        f *= delta;
        if (std::abs(delta - 1.0) < kEps) break;
    }
    return 1.0 / (std::sqrt(std::numbers::pi) * f);
}

// E1(x) = -Ei(-x), x > 0.
double expint_e1(double x) {
    if (x <= 1.0) {
        // E1(x) = -gamma - ln x + sum (-1)^{k+1} x^k / (k k!)
        double term = 1.0;
        double sum = 0.0;
        for (int k = 1; k < 100; ++k) {
            term *= -x / k;
            const double add = -term / k;
            sum += add;
            if (std::abs(add) < kEps * std::abs(sum)) break;
        }
        return -kEulerGamma - std::log(x) + sum;
    }
    // Continued fraction E1(x) = e^{-x} / (x + 1/(1 + 1/(x + 2/(1 + ...)))).
    const double tiny = 1e-300;
    double b = x + 1.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double f = d;
    for (int k = 1; k < 400; ++k) {
        const double a = -static_cast<double>(k) * k;
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        if (c == 0.0) c = tiny;
        const double delta = c * d;
        f *= delta;
        if (std::abs(delta - 1.0) < kEps) break;
    }
    return f * std::exp(-x);
}

}  // namespace

double erf(double x) {
    if (std::isnan(x)) return x;
    const double ax = std::abs(x);
    if (ax <= 2.0) return erf_series(x);
    if (ax > 6.0) return x > 0 ? 1.0 : -1.0;  // erfc(6) < 1e-17
    const double v = 1.0 - erfc_cf_scaled(ax) * std::exp(-ax * ax);
    return x > 0 ? v : -v;
}

double erfi(double x) {
    // All-positive-term series; no cancellation, usable through |x| ~ 26
    // before e^{x^2} overflows.
    const double x2 = x * x;
    double term = x;
    double sum = x;
    for (int k = 1; k < 5000; ++k) {
        term *= x2 / k;
        sum += term / (2.0 * k + 1.0);
        if (std::abs(term) < kEps * std::abs(sum) && k > 3) break;
    }
    return sum * 2.0 / std::sqrt(std::numbers::pi);
}

double expint_ei(double x) {
    if (x == 0.0) throw std::domain_error("expint_ei: pole at x = 0");
    if (x < 0.0) return -expint_e1(-x);
    // Positive argument: all series terms positive after the log, safe.
    double term = 1.0;
    double sum = 0.0;
    for (int k = 1; k < 500; ++k) {
        term *= x / k;
        sum += term / k;
        if (term / k < kEps * std::abs(sum) && k > 3) break;
    }
    return kEulerGamma + std::log(x) + sum;
}

}  // namespace polysinc::special
