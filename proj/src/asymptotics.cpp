#include "befpp/asymptotics.hpp"

#include <cmath>

namespace befpp {

namespace {

constexpr double kRootTol = 1e-13;

// bracketed bisection followed by Newton polish
template <typename F, typename DF>
double solve_root(F f, DF df, double lo, double hi) {
  for (int it = 0; it < 80; ++it) {
    double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 30; ++it) {
    double step = f(x) / df(x);
    x -= step;
    if (std::abs(step) < kRootTol * std::max(1.0, std::abs(x))) break;
  }
  return x;
}

}  // namespace

TWScaling hs_tw_scaling(double s) {
  if (!(s > 0.0)) throw ConfigError("hs_tw_scaling: s must be > 0");
  TWScaling t;
  t.location = std::pow(2.0, -2.0 / 3.0) * 3.0 * std::cbrt(s);
  t.scale = std::pow(2.0, -4.0 / 9.0) * std::pow(3.0, 1.0 / 3.0) *
            std::pow(s, -1.0 / 9.0);
  return t;
}

TWDistance tw_distance(double s, const std::vector<double>& r_grid,
                       const FredholmSpec& fspec) {
  if (!(s > 0.0)) throw ConfigError("tw_distance: s must be > 0");
  if (r_grid.empty()) throw ConfigError("tw_distance: empty r grid");
  const TWScaling sc = hs_tw_scaling(s);
  TWDistance out;
  out.gaps.reserve(r_grid.size());
  for (double r : r_grid) {
    const double h = sc.location + sc.scale * r;
    const DetValue hs = cdf_Hs(LimitLawQuery{s, h}, fspec);
    const DetValue tw = tw_cdf(r, fspec);
    const double gap = std::abs(hs.value - tw.value);
    out.gaps.push_back(gap);
    out.hs_values.push_back(hs.value);
    out.tw_values.push_back(tw.value);
    out.distance = std::max(out.distance, gap);
  }
  return out;
}

DetValue cluster_scaling_cdf(double s, double t, double x,
                             const FredholmSpec& fspec) {
  if (!(s > 0.0) || !(t > 0.0))
    throw ConfigError("cluster_scaling_cdf: s and t must be > 0");
  const double st = std::sqrt(t);
  return cdf_Hs(LimitLawQuery{st * s, x / st}, fspec);
}

TWScaling cluster_scaling(double s, double t) {
  if (!(s > 0.0) || !(t > 0.0))
    throw ConfigError("cluster_scaling: s and t must be > 0");
  TWScaling out;
  out.location = std::pow(2.0, -2.0 / 3.0) * 3.0 * std::cbrt(s) *
                 std::pow(t, 2.0 / 3.0);
  out.scale = std::pow(2.0, -4.0 / 9.0) * std::pow(3.0, 1.0 / 3.0) *
              std::pow(s, -1.0 / 9.0) * std::pow(t, 4.0 / 9.0);
  return out;
}

PassageTWMap passage_tw_maps(double h, double r) {
  if (!(h > 0.0)) throw ConfigError("passage_tw_maps: h must be > 0");
  PassageTWMap out;
  out.s_of_h = 4.0 * h * h * h / 27.0 -
               std::pow(2.0 / 3.0, 4.0 / 3.0) * std::pow(h, 5.0 / 3.0) * r;
  if (!(out.s_of_h > 0.0))
    throw ConfigError("passage_tw_maps: s(h, r) <= 0; r too large for this h");
  const TWScaling sc = hs_tw_scaling(out.s_of_h);
  out.h_of_s_check = sc.location + sc.scale * r;
  return out;
}

double tail_rhs(double s, double h, double C, double h_threshold) {
  if (!(C > 0.0)) throw ConfigError("tail_rhs: C must be > 0");
  if (!(s >= 0.0) || !(s <= h))
    throw ConfigError("tail_rhs: bound requires 0 <= s <= h");
  if (!(h >= h_threshold))
    throw ConfigError("tail_rhs: h below threshold h0");
  return C * std::exp(-0.5 * h * h + 4.0 * std::sqrt(s * h)) / h;
}

TailRatio tail_empirical_ratio(double s, double h, double C,
                               const FredholmSpec& fspec) {
  TailRatio out;
  out.rhs = tail_rhs(s, h, C);
  const DetValue d = cdf_Hs(LimitLawQuery{s, h}, fspec);
  out.lhs = 1.0 - d.raw;
  out.trusted = out.lhs > 1e-10;  // below the determinant accuracy floor
  out.ratio = out.lhs / out.rhs;
  return out;
}

TailExponentFit fit_tail_exponent(const std::vector<double>& s_values,
                                  const std::vector<double>& h_values,
                                  const std::vector<double>& lhs_values) {
  const std::size_t n = s_values.size();
  if (n < 2 || h_values.size() != n || lhs_values.size() != n)
    throw ConfigError("fit_tail_exponent: need >= 2 consistent points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = std::sqrt(s_values[i] * h_values[i]);
    const double y = std::log(lhs_values[i]) + 0.5 * h_values[i] * h_values[i];
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  if (std::abs(denom) < 1e-12)
    throw ConfigError("fit_tail_exponent: degenerate design (constant sqrt(sh))");
  TailExponentFit fit;
  fit.beta = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.beta * sx) / n;
  return fit;
}

double kappa_of_c(double c) {
  if (!(c > 0.0)) throw ConfigError("kappa_of_c: c must be > 0");
  auto f = [c](double k) { return k - 1.0 - c / (k * k); };
  auto df = [c](double k) { return 1.0 + 2.0 * c / (k * k * k); };
  return solve_root(f, df, 1.0, 1.0 + std::cbrt(c) + c + 1.0);
}

double e_of_c(double c) {
  if (!(c > 0.0)) throw ConfigError("e_of_c: c must be > 0");
  auto f = [c](double e) { return e + 1.0 - c / (e * e); };
  auto df = [c](double e) { return 1.0 + 2.0 * c / (e * e * e); };
  return solve_root(f, df, std::min(1e-12, std::sqrt(c) * 0.5),
                    std::sqrt(c) + c + 1.0);
}

double coeff_sum(double c) {
  const double k = kappa_of_c(c);
  const double e = e_of_c(c);
  return (0.5 * k * k - k + c / k) + (0.5 * e * e + e + c / e);
}

double find_cstar() {
  double lo = 1e-6, hi = 0.2;
  if (!(coeff_sum(lo) < 0.0) || !(coeff_sum(hi) > 0.0))
    throw AccuracyError("find_cstar: sign conditions violated on (1e-6, 0.2)");
  for (int it = 0; it < 80; ++it) {
    double mid = 0.5 * (lo + hi);
    (coeff_sum(mid) < 0.0 ? lo : hi) = mid;
  }
  const double cstar = 0.5 * (lo + hi);
  // the contours must stay ordered on the whole interval
  for (int i = 1; i <= 32; ++i) {
    const double c = cstar * i / 32.0;
    if (!(e_of_c(c) < kappa_of_c(c)))
      throw AccuracyError("find_cstar: e(c) >= kappa(c) below c*");
  }
  return cstar;
}

}  // namespace befpp
