#pragma once

#include <functional>
#include <vector>

#include "befpp/contour.hpp"
#include "befpp/kernels.hpp"

namespace befpp {

// Nystrom discretization parameters for half-line determinants: the
// interval (h, infinity) is replaced by (h, h + trunc_len) with `nodes`
// Gauss-Legendre points.
struct FredholmSpec {
  double trunc_len = 8.0;  // L
  int nodes = 48;          // M
  double tol = 1e-6;

  void validate() const {
    if (nodes < 16) throw ConfigError("FredholmSpec: need at least 16 nodes");
    if (!(trunc_len >= 5.0)) throw ConfigError("FredholmSpec: need trunc_len >= 5");
    if (!(tol > 0.0)) throw ConfigError("FredholmSpec: tol must be positive");
  }
};

struct LimitLawQuery {
  double s = 0.0;  // rescaled percolation level
  double h = 0.0;  // rescaled height threshold
};

// determinant result: clipped probability, raw determinant, refinement
// error (node doubling + 1.5x truncation) and imaginary residual
struct DetValue {
  double value = 0.0;
  double raw = 0.0;
  double est_error = 0.0;
  double imag_residual = 0.0;
};

// det(I - W^{1/2} K W^{1/2}) on (h, h+L) for a pointwise real kernel.
using KernelFn = std::function<double(double, double)>;
DetValue fredholm_det_halfline(const KernelFn& kernel, double h,
                               const FredholmSpec& spec);

// P(H_s < h) = det(1 - K_s)_{L^2((h, inf))}
DetValue cdf_Hs(const LimitLawQuery& q, const ContourSpec& cspec,
                const FredholmSpec& fspec);
DetValue cdf_Hs(const LimitLawQuery& q, const FredholmSpec& fspec = {});

// shared-discretization batch over thresholds (same s)
std::vector<DetValue> cdf_Hs_batch(double s, const std::vector<double>& hs,
                                   const FredholmSpec& fspec = {});

// P(T_h > s), the passage-time survival function; same determinant with the
// roles of (s, h) read the other way around.  Requires s > 0.
DetValue ccdf_Th(double h, double s, const FredholmSpec& fspec = {});

// P(H(n, r) < k) from the closed-contour determinant formula.
DetValue finite_n_cdf(const FiniteKernelParams& p, int outer_nodes = 256,
                      int inner_nodes = 128);

// GUE Tracy-Widom distribution F(r) = det(1 - K_Airy)_{L^2((r, inf))}
DetValue tw_cdf(double r, const FredholmSpec& fspec = {});

}  // namespace befpp
