#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>

#include "befpp/contour.hpp"
#include "befpp/errors.hpp"

namespace befpp {

using Complex = std::complex<double>;

// Numerical result with provenance: the discarded imaginary part and the
// change under node doubling.
struct KernelValue {
  double value = 0.0;
  double imag_residual = 0.0;
  double est_error = 0.0;
};

// Contour discretization of K_s with quadrature weights, measure factors
// and (2 pi i)^{-2} folded into the matrix C:
//   K_s(x,y) = sum_{j,m} e^{-y u_j} C(j,m) e^{x v_m}.
// C is independent of (x, y) and is reused across Nystrom points.
struct KsFactor {
  double s = 0.0;
  Eigen::VectorXcd u;  // line nodes K + i t
  Eigen::VectorXcd v;  // circle nodes rho e^{i theta}
  Eigen::MatrixXcd C;  // line_nodes x circle_nodes
};

KsFactor make_ks_factor(double s, const ContourSpec& spec);

// values K_s(x_i, y_j) e^{conj (x_i - y_j)} for all pairs; conj != 0 applies
// the determinant-invariant conjugation used to keep entries in range.
Eigen::MatrixXcd ks_values(const KsFactor& factor, const Eigen::VectorXd& xs,
                           const Eigen::VectorXd& ys, double conj = 0.0);

// Limit kernel K_s(x,y); line carries u, circle carries v.
KernelValue eval_Ks(double s, double x, double y, const ContourSpec& spec,
                    double tol = 1e-10);

// Factorization pair: f(s,x) over the circle, g(s,y) over the line, with
// d/ds K_s(x,y) = f(s,x) g(s,y).
KernelValue eval_f(double s, double x, const ContourSpec& spec,
                   double tol = 1e-10);
KernelValue eval_g(double s, double y, const ContourSpec& spec,
                   double tol = 1e-10);

// Hard-edge Pearcey single-time kernel L_s(x,y); circle carries w, line
// carries z, and -d/ds L_s(x,y) = f(x,s) g(y,s).
KernelValue eval_Ls(double s, double x, double y, const ContourSpec& spec,
                    double tol = 1e-10);

// Airy kernel (reference for the Tracy-Widom limit).
double eval_airy_kernel(double x, double y);

// Finite-n kernel of the closed-contour determinant formula.
struct FiniteKernelParams {
  double a = 1.0;
  double b = 1.0;
  int n = 1;
  int k = 0;
  double r = 0.5;
  double outer_radius = 0.0;  // 0: derived default
  double inner_radius = 0.0;

  double outer_center() const { return -0.5 / (a + b); }
  double inner_radius_eff() const {
    return inner_radius > 0.0 ? inner_radius : 0.2 / (a + b);
  }
  double outer_radius_eff() const {
    return outer_radius > 0.0 ? outer_radius : 0.8 / (a + b);
  }
  void validate() const;

  // integer exponents of the symbol g
  std::int64_t exp_num() const;  // (a+b) n
  std::int64_t exp_den() const;  // a n + k
};

// log of the symbol g(z) = (1+az)^{(a+b)n} z / (1+(a+b)z)^{an+k}
Complex finite_symbol_log_g(Complex z, const FiniteKernelParams& p);
Complex finite_symbol_g(Complex z, const FiniteKernelParams& p);

// pointwise kernel value; u, u2 must lie outside the inner circle
Complex eval_finite_kernel(Complex u, Complex u2, const FiniteKernelParams& p,
                           int inner_nodes);

}  // namespace befpp
