#pragma once

#include <vector>

namespace polysinc {

// Conformal map of the open interval (a,b) onto the real line,
// phi(x) = ln((x-a)/(b-x)), and its derivative.
double phi(double x, double a, double b);
double phi_prime(double x, double a, double b);

// Sinc points on (a,b): images of the uniform grid {kh, k=-N..N} under the
// inverse map, x_k = (a + b e^{kh}) / (1 + e^{kh}).  Points cluster
// exponentially toward both endpoints and never touch them.
struct SincGrid {
    double a = 0.0;
    double b = 1.0;
    int N = 1;                   // half-count; the grid has m = 2N+1 points
    double h = 0.0;              // spacing in the mapped variable
    std::vector<double> points;  // strictly increasing, symmetric about (a+b)/2

    int size() const { return static_cast<int>(points.size()); }
    double length() const { return b - a; }
    double midpoint() const { return 0.5 * (a + b); }
};

// Default spacing h = pi*sqrt(2/N).
SincGrid sinc_points(double a, double b, int N);

// General spacing h = sqrt(pi*d/(beta*N)).
SincGrid sinc_points(double a, double b, int N, double d, double beta);

}  // namespace polysinc
