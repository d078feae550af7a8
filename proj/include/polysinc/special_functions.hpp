#pragma once

namespace polysinc::special {

// Error function, relative accuracy <= 1e-12 on |x| <= 25.
double erf(double x);

// Imaginary error function, erfi(x) = (2/sqrt(pi)) * integral_0^x e^{t^2} dt.
double erfi(double x);

// Exponential integral Ei(x) = PV integral_{-inf}^x e^t/t dt, x != 0.
// Throws std::domain_error at the pole x = 0.
double expint_ei(double x);

}  // namespace polysinc::special
