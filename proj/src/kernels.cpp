#include "befpp/kernels.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "befpp/airy.hpp"
#include "befpp/quadrature.hpp"

namespace befpp {

namespace {

constexpr int kNodeCap = 4096;

// largest real root of w^3 - h w^2 + s = 0 via Newton with bisection bracket
double cubic_largest_root(double h, double s) {
  auto f = [&](double w) { return ((w - h) * w) * w + s; };
  double lo = 2.0 * h / 3.0;           // local minimum
  double hi = h + std::cbrt(s) + 1.0;  // f(hi) > 0
  if (f(lo) >= 0.0) return -1.0;       // no root above the minimum
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double cubic_smallest_positive_root(double h, double s) {
  auto f = [&](double w) { return ((w - h) * w) * w + s; };
  double lo = 0.0, hi = 2.0 * h / 3.0;
  if (f(hi) >= 0.0) return -1.0;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    (f(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

Eigen::VectorXcd circle_nodes(double rho, int n) {
  Eigen::VectorXcd v(n);
  for (int m = 0; m < n; ++m) {
    double th = 2.0 * M_PI * (m + 0.5) / n;
    v[m] = Complex(rho * std::cos(th), rho * std::sin(th));
  }
  return v;
}

}  // namespace

ContourSpec default_contour(double s, double h_ref, double y_min, double tol) {
  ContourSpec c;
  double K = 1.0, rho = 0.4;
  if (s > 2.0) {
    const double hb = std::max(h_ref, 1.0);
    const double big = cubic_largest_root(hb, s);
    const double small = cubic_smallest_positive_root(hb, s);
    if (big > 0.0 && small > 0.0 && big > 1.25 * small) {
      K = big;
      rho = std::min(small, 0.9 * big);
    } else {
      const double w = std::cbrt(2.0 * s);  // coalesced saddle 2^{1/3} s^{1/3}
      K = 1.1 * w;
      rho = 0.85 * w;
    }
    if (K < 1.0) {
      rho *= 1.0 / K;
      K = 1.0;
      rho = std::min(rho, 0.9);
    }
  }
  c.line_abscissa = K;
  c.circle_radius = rho;
  c.line_halfwidth =
      K + std::sqrt(2.0 * std::log(1.0 / std::max(tol, 1e-300))) +
      std::max(0.0, -y_min);
  return c;
}

KsFactor make_ks_factor(double s, const ContourSpec& spec) {
  spec.validate();
  KsFactor f;
  f.s = s;
  const int Nl = spec.line_nodes, Nc = spec.circle_nodes;
  const double K = spec.line_abscissa, T = spec.line_halfwidth;

  QuadratureRule gl = gauss_legendre_on(Nl, -T, T);
  f.u.resize(Nl);
  Eigen::VectorXcd pu(Nl);
  for (int j = 0; j < Nl; ++j) {
    const Complex u(K, gl.nodes[j]);
    f.u[j] = u;
    // du = i dt; exponent part independent of y
    pu[j] = std::exp(0.5 * u * u - s / u) * u * Complex(0.0, gl.weights[j]);
  }

  f.v = circle_nodes(spec.circle_radius, Nc);
  Eigen::VectorXcd qv(Nc);
  const double dth = 2.0 * M_PI / Nc;
  for (int m = 0; m < Nc; ++m) {
    const Complex v = f.v[m];
    // integrand 1/v combines with dv = i v dtheta
    qv[m] = std::exp(-0.5 * v * v + s / v) * Complex(0.0, dth);
  }

  const Complex pref = 1.0 / ((2.0 * M_PI * Complex(0.0, 1.0)) *
                              (2.0 * M_PI * Complex(0.0, 1.0)));
  f.C.resize(Nl, Nc);
  for (int j = 0; j < Nl; ++j)
    for (int m = 0; m < Nc; ++m)
      f.C(j, m) = pref * pu[j] * qv[m] / (f.u[j] - f.v[m]);
  return f;
}

Eigen::MatrixXcd ks_values(const KsFactor& factor, const Eigen::VectorXd& xs,
                           const Eigen::VectorXd& ys, double conj) {
  const int Nl = static_cast<int>(factor.u.size());
  const int Nc = static_cast<int>(factor.v.size());
  Eigen::MatrixXcd E(Nl, ys.size());  // e^{-y u} e^{-conj y}
  for (int j = 0; j < Nl; ++j)
    for (int i = 0; i < ys.size(); ++i)
      E(j, i) = std::exp(-ys[i] * factor.u[j] - conj * ys[i]);
  Eigen::MatrixXcd F(Nc, xs.size());  // e^{x v} e^{+conj x}
  for (int m = 0; m < Nc; ++m)
    for (int i = 0; i < xs.size(); ++i)
      F(m, i) = std::exp(xs[i] * factor.v[m] + conj * xs[i]);
  // result(ix, iy) = e^{conj(x - y)} K_s(x_ix, y_iy)
  return (E.transpose() * factor.C * F).transpose();
}

namespace {

KernelValue with_doubling(const ContourSpec& spec, double tol,
                          const std::function<Complex(const ContourSpec&)>& eval) {
  ContourSpec cur = spec;
  Complex val = eval(cur);
  double err = std::numeric_limits<double>::infinity();
  while (true) {
    ContourSpec next = cur.doubled();
    if (next.line_nodes > kNodeCap || next.circle_nodes > kNodeCap) break;
    Complex refined = eval(next);
    err = std::abs(refined - val);
    val = refined;
    cur = next;
    if (err < tol) break;
  }
  KernelValue out;
  out.value = val.real();
  out.imag_residual = std::abs(val.imag());
  out.est_error = err;
  if (!std::isfinite(out.value))
    throw AccuracyError("kernel evaluation produced a non-finite value");
  if (out.imag_residual > tol)
    throw AccuracyError("kernel evaluation: imaginary residual " +
                        std::to_string(out.imag_residual) +
                        " exceeds tolerance (K=" +
                        std::to_string(spec.line_abscissa) +
                        ", rho=" + std::to_string(spec.circle_radius) + ")");
  return out;
}

}  // namespace

KernelValue eval_Ks(double s, double x, double y, const ContourSpec& spec,
                    double tol) {
  if (!(s >= 0.0)) throw ConfigError("eval_Ks: s must be >= 0");
  spec.validate();
  Eigen::VectorXd xs(1), ys(1);
  xs[0] = x;
  ys[0] = y;
  return with_doubling(spec, tol, [&](const ContourSpec& c) {
    KsFactor f = make_ks_factor(s, c);
    return ks_values(f, xs, ys)(0, 0);
  });
}

KernelValue eval_f(double s, double x, const ContourSpec& spec, double tol) {
  spec.validate();
  return with_doubling(spec, tol, [&](const ContourSpec& c) {
    // (1/2 pi i) oint dv/v^2 e^{-v^2/2 + x v + s/v}; trapezoid in theta
    const int Nc = c.circle_nodes;
    Eigen::VectorXcd v = circle_nodes(c.circle_radius, Nc);
    Complex acc = 0.0;
    for (int m = 0; m < Nc; ++m)
      acc += std::exp(-0.5 * v[m] * v[m] + x * v[m] + s / v[m]) / v[m];
    return acc / static_cast<double>(Nc);
  });
}

KernelValue eval_g(double s, double y, const ContourSpec& spec, double tol) {
  spec.validate();
  return with_doubling(spec, tol, [&](const ContourSpec& c) {
    const double K = c.line_abscissa, T = c.line_halfwidth;
    QuadratureRule gl = gauss_legendre_on(c.line_nodes, -T, T);
    Complex acc = 0.0;
    for (int j = 0; j < c.line_nodes; ++j) {
      const Complex u(K, gl.nodes[j]);
      acc += std::exp(0.5 * u * u - y * u - s / u) * gl.weights[j];
    }
    // du = i dt and 1/(2 pi i) combine to 1/(2 pi)
    return acc / (2.0 * M_PI);
  });
}

KernelValue eval_Ls(double s, double x, double y, const ContourSpec& spec,
                    double tol) {
  spec.validate();
  return with_doubling(spec, tol, [&](const ContourSpec& c) {
    const double K = c.line_abscissa, T = c.line_halfwidth;
    QuadratureRule gl = gauss_legendre_on(c.line_nodes, -T, T);
    Eigen::VectorXcd w = circle_nodes(c.circle_radius, c.circle_nodes);
    Eigen::VectorXcd ew(c.circle_nodes);
    const double dth = 2.0 * M_PI / c.circle_nodes;
    for (int m = 0; m < c.circle_nodes; ++m)
      ew[m] = std::exp(-0.5 * w[m] * w[m] + s * w[m] + x / w[m]) *
              Complex(0.0, dth) * w[m] / (w[m] * w[m]);
    Complex acc = 0.0;
    for (int j = 0; j < c.line_nodes; ++j) {
      const Complex z(K, gl.nodes[j]);
      const Complex ez =
          std::exp(0.5 * z * z - s * z - y / z) * Complex(0.0, gl.weights[j]);
      Complex inner = 0.0;
      for (int m = 0; m < c.circle_nodes; ++m) inner += ew[m] / (z - w[m]);
      acc += ez * inner;
    }
    const Complex pref = 1.0 / ((2.0 * M_PI * Complex(0.0, 1.0)) *
                                (2.0 * M_PI * Complex(0.0, 1.0)));
    return pref * acc;
  });
}

double eval_airy_kernel(double x, double y) { return airy_kernel(x, y); }

void FiniteKernelParams::validate() const {
  if (!(a > 0.0) || !(b > 0.0))
    throw ConfigError("FiniteKernelParams: rates must be positive");
  if (!(r > 0.0)) throw ConfigError("FiniteKernelParams: r must be > 0");
  if (n < 0) throw ConfigError("FiniteKernelParams: n must be >= 0");
  const double ab = a + b;
  const double rin = inner_radius_eff(), rout = outer_radius_eff();
  if (!(rin > 0.0) || !(rin < 1.0 / ab))
    throw ConfigError("FiniteKernelParams: inner circle must exclude -1/(a+b)");
  // outer circle around -1/(2(a+b)) must enclose the inner circle and -1/(a+b)
  if (!(rout > 0.5 / ab + rin) || !(rout > 0.5 / ab))
    throw ConfigError("FiniteKernelParams: outer contour must encircle D0 and -1/(a+b)");
  exp_num();
  exp_den();
}

std::int64_t FiniteKernelParams::exp_num() const {
  const double e = (a + b) * n;
  const std::int64_t v = static_cast<std::int64_t>(std::llround(e));
  if (std::abs(e - static_cast<double>(v)) > 1e-9)
    throw ConfigError("FiniteKernelParams: (a+b)n must be an integer");
  return v;
}

std::int64_t FiniteKernelParams::exp_den() const {
  const double e = a * n;
  const std::int64_t v = static_cast<std::int64_t>(std::llround(e));
  if (std::abs(e - static_cast<double>(v)) > 1e-9)
    throw ConfigError("FiniteKernelParams: a n must be an integer");
  return v + k;
}

Complex finite_symbol_log_g(Complex z, const FiniteKernelParams& p) {
  // integer exponents keep exp(m log z) branch-independent
  return static_cast<double>(p.exp_num()) * std::log(1.0 + p.a * z) -
         static_cast<double>(p.exp_den()) * std::log(1.0 + (p.a + p.b) * z) +
         std::log(z);
}

Complex finite_symbol_g(Complex z, const FiniteKernelParams& p) {
  return std::exp(finite_symbol_log_g(z, p));
}

Complex eval_finite_kernel(Complex u, Complex u2, const FiniteKernelParams& p,
                           int inner_nodes) {
  p.validate();
  if (inner_nodes < 8) throw ConfigError("eval_finite_kernel: too few inner nodes");
  const double rin = p.inner_radius_eff();
  if (std::abs(u) <= rin || std::abs(u2) <= rin)
    throw ConfigError("eval_finite_kernel: u inside the inner contour");
  const Complex lgu = finite_symbol_log_g(u, p);
  Eigen::VectorXcd v = circle_nodes(rin, inner_nodes);
  Complex acc = 0.0;
  for (int m = 0; m < inner_nodes; ++m) {
    const Complex lgv = finite_symbol_log_g(v[m], p);
    acc += std::exp(p.r * (1.0 / v[m] - 1.0 / u) + lgu - lgv) * v[m] /
           ((v[m] - u) * (v[m] - u2));
  }
  // (1/2 pi i) dv with dv = i v dtheta leaves v dtheta / (2 pi)
  return acc / static_cast<double>(inner_nodes);
}

}  // namespace befpp
