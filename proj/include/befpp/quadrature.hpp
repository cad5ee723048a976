#pragma once

#include <Eigen/Dense>

namespace befpp {

struct QuadratureRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

// Gauss-Legendre rule on [-1, 1], Newton iteration on the Legendre
// recurrence; exact for polynomials of degree 2n-1.
QuadratureRule gauss_legendre(int n);

// affine image of gauss_legendre on [lo, hi]
QuadratureRule gauss_legendre_on(int n, double lo, double hi);

}  // namespace befpp
