#pragma once

#include "befpp/errors.hpp"

namespace befpp {

// Discretized integration contours for the double contour-integral kernels:
// a vertical line Re(u) = line_abscissa truncated to |Im(u)| <= line_halfwidth
// (Gauss-Legendre) and a circle of circle_radius around 0 (trapezoid).
struct ContourSpec {
  double line_abscissa = 1.0;   // K
  double line_halfwidth = 7.5;  // T
  int line_nodes = 400;
  double circle_radius = 0.4;   // rho
  int circle_nodes = 256;

  void validate() const {
    if (!(circle_radius > 0.0) || !(circle_radius < line_abscissa))
      throw ConfigError("ContourSpec: need 0 < rho < K (contours must not intersect)");
    if (line_nodes < 8 || circle_nodes < 8)
      throw ConfigError("ContourSpec: node counts must be >= 8");
    if (line_nodes % 2 != 0 || circle_nodes % 2 != 0)
      throw ConfigError("ContourSpec: node counts must be even");
    if (!(line_halfwidth > 0.0))
      throw ConfigError("ContourSpec: line halfwidth must be positive");
  }

  ContourSpec doubled() const {
    ContourSpec c = *this;
    c.line_nodes *= 2;
    c.circle_nodes *= 2;
    return c;
  }
};

// Contour choice adapted to the integrand saddles.  The exponents
// u^2/2 - h u - s/u have critical points at the roots of w^3 - h w^2 + s = 0;
// in the tail regime (s < 4h^3/27) the two positive roots reproduce the
// K = h, rho = sqrt(s/h) choice that optimizes the tail bound, and at the
// Tracy-Widom edge they coalesce at 2^{1/3} s^{1/3}.
ContourSpec default_contour(double s, double h_ref, double y_min, double tol);

inline ContourSpec default_contour(double s, double h_ref) {
  return default_contour(s, h_ref, h_ref, 1e-12);
}

}  // namespace befpp
