#include "befpp/quadrature.hpp"

#include <cmath>

#include "befpp/errors.hpp"

namespace befpp {

QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw ConfigError("gauss_legendre: order must be >= 1");
  QuadratureRule q;
  q.nodes.resize(n);
  q.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Tricomi initial guess, then Newton on P_n
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    q.nodes[i] = -x;
    q.nodes[n - 1 - i] = x;
    q.weights[i] = w;
    q.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) q.nodes[n / 2] = 0.0;
  return q;
}

QuadratureRule gauss_legendre_on(int n, double lo, double hi) {
  QuadratureRule q = gauss_legendre(n);
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  q.nodes = (q.nodes.array() * half + mid).matrix();
  q.weights *= half;
  return q;
}

}  // namespace befpp
