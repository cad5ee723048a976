#include "befpp/fredholm.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <map>

#include "befpp/airy.hpp"
#include "befpp/quadrature.hpp"

namespace befpp {

namespace {

double clip01(double x) { return std::min(1.0, std::max(0.0, x)); }

double det_real_kernel(const KernelFn& kernel, double h, double L, int M) {
  QuadratureRule q = gauss_legendre_on(M, h, h + L);
  Eigen::VectorXd sq = q.weights.array().sqrt();
  Eigen::MatrixXd A(M, M);
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < M; ++j)
      A(i, j) = sq[i] * kernel(q.nodes[i], q.nodes[j]) * sq[j];
  Eigen::MatrixXd I = Eigen::MatrixXd::Identity(M, M);
  return Eigen::PartialPivLU<Eigen::MatrixXd>(I - A).determinant();
}

// truncation length: the configured/|h|-padded value, capped where the
// contour guarantees decay at rate at least (K - rho)
double effective_trunc(double h, const ContourSpec& c, const FredholmSpec& f) {
  double L = std::max(f.trunc_len, std::abs(h) + 8.0);
  const double decay = std::max(c.line_abscissa - c.circle_radius, 0.4);
  return std::min(L, std::max(6.0, 34.0 / decay));
}

struct KsDet {
  double det;
  double imag_res;
};

KsDet ks_det_once(const KsFactor& factor, double rho, double h, double L,
                  int M) {
  QuadratureRule q = gauss_legendre_on(M, h, h + L);
  Eigen::VectorXd xs = q.nodes;
  Eigen::MatrixXcd km = ks_values(factor, xs, xs, -rho);
  Eigen::VectorXd sq = q.weights.array().sqrt();
  Eigen::MatrixXcd A = sq.asDiagonal() * km * sq.asDiagonal();
  const double imag_res = A.imag().cwiseAbs().maxCoeff();
  Eigen::MatrixXd I = Eigen::MatrixXd::Identity(M, M);
  Eigen::MatrixXd Ar = A.real();
  const double det =
      Eigen::PartialPivLU<Eigen::MatrixXd>(I - Ar).determinant();
  return {det, imag_res};
}

DetValue finish(double base, const KsDet& refined) {
  DetValue out;
  out.raw = refined.det;
  out.value = clip01(refined.det);
  out.est_error = std::abs(refined.det - base);
  out.imag_residual = refined.imag_res;
  if (!std::isfinite(out.raw))
    throw AccuracyError("fredholm determinant is not finite");
  return out;
}

}  // namespace

DetValue fredholm_det_halfline(const KernelFn& kernel, double h,
                               const FredholmSpec& spec) {
  spec.validate();
  const double L = std::max(spec.trunc_len, std::abs(h) + 8.0);
  const double base = det_real_kernel(kernel, h, L, spec.nodes);
  const double refined = det_real_kernel(kernel, h, 1.5 * L, 2 * spec.nodes);
  DetValue out;
  out.raw = refined;
  out.value = clip01(refined);
  out.est_error = std::abs(refined - base);
  out.imag_residual = 0.0;
  if (!std::isfinite(out.raw))
    throw AccuracyError("fredholm determinant is not finite");
  return out;
}

DetValue cdf_Hs(const LimitLawQuery& q, const ContourSpec& cspec,
                const FredholmSpec& fspec) {
  if (!(q.s >= 0.0)) throw ConfigError("cdf_Hs: s must be >= 0");
  cspec.validate();
  fspec.validate();
  const double L = effective_trunc(q.h, cspec, fspec);
  KsFactor f1 = make_ks_factor(q.s, cspec);
  KsDet base = ks_det_once(f1, cspec.circle_radius, q.h, L, fspec.nodes);
  ContourSpec cd = cspec.doubled();
  KsFactor f2 = make_ks_factor(q.s, cd);
  KsDet refined =
      ks_det_once(f2, cd.circle_radius, q.h, 1.5 * L, 2 * fspec.nodes);
  return finish(base.det, refined);
}

DetValue cdf_Hs(const LimitLawQuery& q, const FredholmSpec& fspec) {
  ContourSpec c = default_contour(q.s, q.h, q.h, 1e-12);
  return cdf_Hs(q, c, fspec);
}

std::vector<DetValue> cdf_Hs_batch(double s, const std::vector<double>& hs,
                                   const FredholmSpec& fspec) {
  fspec.validate();
  if (!(s >= 0.0)) throw ConfigError("cdf_Hs_batch: s must be >= 0");
  std::vector<DetValue> out(hs.size());
  if (hs.empty()) return out;
  const double hmin = *std::min_element(hs.begin(), hs.end());

  // factors cached per contour geometry; the line halfwidth is padded for
  // the most negative threshold in the batch so the factor can be shared
  std::map<std::pair<double, double>, std::pair<KsFactor, KsFactor>> cache;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    ContourSpec c = default_contour(s, hs[i], hmin, 1e-12);
    auto key = std::make_pair(c.line_abscissa, c.circle_radius);
    auto it = cache.find(key);
    if (it == cache.end()) {
      KsFactor f1 = make_ks_factor(s, c);
      KsFactor f2 = make_ks_factor(s, c.doubled());
      it = cache.emplace(key, std::make_pair(std::move(f1), std::move(f2)))
               .first;
    }
    const double L = effective_trunc(hs[i], c, fspec);
    KsDet base =
        ks_det_once(it->second.first, c.circle_radius, hs[i], L, fspec.nodes);
    KsDet refined = ks_det_once(it->second.second, c.circle_radius, hs[i],
                                1.5 * L, 2 * fspec.nodes);
    out[i] = finish(base.det, refined);
  }
  return out;
}

DetValue ccdf_Th(double h, double s, const FredholmSpec& fspec) {
  if (!(s > 0.0)) throw ConfigError("ccdf_Th: s must be > 0");
  return cdf_Hs(LimitLawQuery{s, h}, fspec);
}

namespace {

struct FiniteDet {
  Complex det;
};

FiniteDet finite_det_once(const FiniteKernelParams& p, int n_out, int n_in) {
  const double ab = p.a + p.b;
  const double rin = p.inner_radius_eff();
  const double rout = p.outer_radius_eff();
  const Complex c0(p.outer_center(), 0.0);

  Eigen::VectorXcd u(n_out), wu(n_out);
  Eigen::VectorXd la(n_out);
  for (int j = 0; j < n_out; ++j) {
    const double th = 2.0 * M_PI * (j + 0.5) / n_out;
    const Complex e(std::cos(th), std::sin(th));
    u[j] = c0 + rout * e;
    wu[j] = rout * e / static_cast<double>(n_out);  // du/(2 pi i)
    la[j] = (finite_symbol_log_g(u[j], p) - p.r / u[j]).real();
  }

  Eigen::VectorXcd v(n_in), lbv(n_in);
  double lbmax = -std::numeric_limits<double>::infinity();
  for (int m = 0; m < n_in; ++m) {
    const double th = 2.0 * M_PI * (m + 0.5) / n_in;
    const Complex e(std::cos(th), std::sin(th));
    v[m] = rin * e;
    lbv[m] = p.r / v[m] - finite_symbol_log_g(v[m], p);
    lbmax = std::max(lbmax, lbv[m].real());
  }

  // rows whose symbol magnitude makes them numerically zero against the
  // identity are dropped (their determinant factor is 1)
  std::vector<int> active;
  active.reserve(n_out);
  for (int j = 0; j < n_out; ++j)
    if (la[j] + lbmax > -90.0) active.push_back(j);
  const int na = static_cast<int>(active.size());
  if (na == 0) return {Complex(1.0, 0.0)};

  Eigen::VectorXcd alpha(na), wcol(na);
  for (int t = 0; t < na; ++t) {
    const int j = active[t];
    alpha[t] = std::exp(finite_symbol_log_g(u[j], p) - p.r / u[j]);
    wcol[t] = wu[j];
  }
  Eigen::VectorXcd beta(n_in);
  for (int m = 0; m < n_in; ++m)
    beta[m] = std::exp(lbv[m]) * v[m] / static_cast<double>(n_in);
  // (1/2 pi i) dv = v dtheta / (2 pi): the v factor is folded into beta

  Eigen::MatrixXcd R(n_in, na);
  for (int m = 0; m < n_in; ++m)
    for (int t = 0; t < na; ++t) R(m, t) = 1.0 / (v[m] - u[active[t]]);

  Eigen::MatrixXcd core = R.transpose() * beta.asDiagonal() * R;
  Eigen::MatrixXcd A = alpha.asDiagonal() * core * wcol.asDiagonal();

  // P(H < k) = det(I - A) with both circles positively oriented
  Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(na, na);
  Eigen::MatrixXcd M = I - A;
  return {Eigen::PartialPivLU<Eigen::MatrixXcd>(M).determinant()};
}

}  // namespace

DetValue finite_n_cdf(const FiniteKernelParams& p, int outer_nodes,
                      int inner_nodes) {
  p.validate();
  const int n_out = std::max(outer_nodes, 64 + 10 * p.n);
  const int n_in = std::max(inner_nodes, 128);
  FiniteDet base = finite_det_once(p, n_out, n_in);
  FiniteDet refined =
      finite_det_once(p, (n_out * 3) / 2, 2 * n_in);
  DetValue out;
  out.raw = refined.det.real();
  out.value = clip01(out.raw);
  out.est_error = std::abs(refined.det - base.det);
  out.imag_residual = std::abs(refined.det.imag());
  if (!std::isfinite(out.raw))
    throw AccuracyError("finite_n_cdf: determinant is not finite");
  return out;
}

DetValue tw_cdf(double r, const FredholmSpec& fspec) {
  return fredholm_det_halfline(
      [](double x, double y) { return airy_kernel(x, y); }, r, fspec);
}

}  // namespace befpp
