#pragma once

namespace befpp {

// Airy function Ai and its derivative: Maclaurin series for |x| <= 6,
// exponentially weighted asymptotic expansions beyond.
double airy_ai(double x);
double airy_ai_prime(double x);

// Airy kernel (Ai(x)Ai'(y) - Ai'(x)Ai(y))/(x - y) with the diagonal limit
// Ai'(x)^2 - x Ai(x)^2.
double airy_kernel(double x, double y);

}  // namespace befpp
