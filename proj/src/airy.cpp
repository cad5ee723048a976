#include "befpp/airy.hpp"

#include <cmath>

namespace befpp {

namespace {

constexpr double kAi0 = 0.35502805388781723926;    // 3^{-2/3}/Gamma(2/3)
constexpr double kAip0 = -0.25881940379280679841;  // -3^{-1/3}/Gamma(1/3)
constexpr double kSeriesCut = 6.0;
constexpr int kAsymMax = 24;

struct AiPair {
  double ai;
  double aip;
};

AiPair series(double x) {
  const double x3 = x * x * x;
  // f, g of DLMF 9.4.1 and their derivatives, term recurrences in x^3
  double f = 1.0, tf = 1.0;
  double g = x, tg = x;
  double fp = 0.5 * x * x, tfp = fp;
  double gp = 1.0, tgp = 1.0;
  for (int k = 0; k < 200; ++k) {
    tf *= x3 / ((3 * k + 2) * (3 * k + 3));
    tg *= x3 / ((3 * k + 3) * (3 * k + 4));
    tgp *= x3 / ((3 * k + 1) * (3 * k + 3));
    f += tf;
    g += tg;
    gp += tgp;
    if (k >= 1) {
      tfp *= x3 / ((3 * k) * (3 * k + 2));
      fp += tfp;
    }
    if (std::abs(tf) + std::abs(tg) < 1e-18 * (std::abs(f) + std::abs(g)))
      break;
  }
  return {kAi0 * f + kAip0 * g, kAi0 * fp + kAip0 * gp};
}

// u_k, v_k coefficients of DLMF 9.7; optimally truncated sums
AiPair asym_pos(double x) {
  const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
  double u = 1.0, su = 1.0, sv = 1.0;
  double prev = 1.0;
  double sgn = -1.0;
  double zk = 1.0;
  for (int k = 1; k < kAsymMax; ++k) {
    u *= (6.0 * k - 5.0) * (6.0 * k - 1.0) / (72.0 * k);
    const double v = u * (6.0 * k + 1.0) / (1.0 - 6.0 * k);
    zk *= zeta;
    const double tu = u / zk;
    if (tu > prev) break;  // past optimal truncation
    prev = tu;
    su += sgn * tu;
    sv += sgn * (v / zk);
    sgn = -sgn;
  }
  const double pre = std::exp(-zeta) / (2.0 * std::sqrt(M_PI));
  const double x4 = std::pow(x, 0.25);
  return {pre / x4 * su, -pre * x4 * sv};
}

AiPair asym_neg(double x) {
  const double t = -x;
  const double zeta = 2.0 / 3.0 * t * std::sqrt(t);
  double u = 1.0;
  double uk[kAsymMax], vk[kAsymMax];
  uk[0] = 1.0;
  vk[0] = 1.0;
  for (int k = 1; k < kAsymMax; ++k) {
    u *= (6.0 * k - 5.0) * (6.0 * k - 1.0) / (72.0 * k);
    uk[k] = u;
    vk[k] = u * (6.0 * k + 1.0) / (1.0 - 6.0 * k);
  }
  double pc = 0.0, ps = 0.0, qc = 0.0, qs = 0.0;
  double zk = 1.0, prev = 1.0 / 0.0;
  for (int k = 0; 2 * k + 1 < kAsymMax; ++k) {
    const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
    const double te = uk[2 * k] / zk;
    if (te > prev) break;
    prev = te;
    pc += sgn * te;
    qc += sgn * vk[2 * k] / zk;
    const double zko = zk * zeta;
    ps += sgn * uk[2 * k + 1] / zko;
    qs += sgn * vk[2 * k + 1] / zko;
    zk *= zeta * zeta;
  }
  const double c = std::cos(zeta - M_PI / 4.0), s = std::sin(zeta - M_PI / 4.0);
  const double t4 = std::pow(t, 0.25);
  const double ai = (c * pc + s * ps) / (std::sqrt(M_PI) * t4);
  const double aip = (s * qc - c * qs) * t4 / std::sqrt(M_PI);
  return {ai, aip};
}

AiPair eval(double x) {
  if (x > kSeriesCut) return asym_pos(x);
  if (x < -kSeriesCut) return asym_neg(x);
  return series(x);
}

}  // namespace

double airy_ai(double x) { return eval(x).ai; }
double airy_ai_prime(double x) { return eval(x).aip; }

double airy_kernel(double x, double y) {
  const double d = x - y;
  if (std::abs(d) < 1e-7) {
    const double m = 0.5 * (x + y);
    AiPair p = eval(m);
    return p.aip * p.aip - m * p.ai * p.ai;
  }
  AiPair px = eval(x), py = eval(y);
  return (px.ai * py.aip - px.aip * py.ai) / d;
}

}  // namespace befpp
