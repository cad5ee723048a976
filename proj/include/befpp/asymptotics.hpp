#pragma once

#include <vector>

#include "befpp/fredholm.hpp"

namespace befpp {

// Centering and scale of the Tracy-Widom limit of H_s:
//   (H_s - location)/scale => GUE Tracy-Widom as s -> infinity.
struct TWScaling {
  double location = 0.0;
  double scale = 1.0;
};

TWScaling hs_tw_scaling(double s);

// sup_r |cdf_Hs(s, location + scale r) - tw_cdf(r)| over a finite grid
struct TWDistance {
  double distance = 0.0;
  std::vector<double> gaps;
  std::vector<double> hs_values;
  std::vector<double> tw_values;
};
TWDistance tw_distance(double s, const std::vector<double>& r_grid,
                       const FredholmSpec& fspec = {});

// cluster height after time t: P(H_s(t) < x) = P(H_{sqrt(t) s} < x/sqrt(t))
DetValue cluster_scaling_cdf(double s, double t, double x,
                             const FredholmSpec& fspec = {});
// centering/scale of H_s(t) in t: location s^{1/3} t^{2/3}-type laws
TWScaling cluster_scaling(double s, double t);

// passage-time <-> TW scaling maps: s(h) = 4h^3/27 - (2/3)^{4/3} h^{5/3} r
// and h(s) = 2^{-2/3} 3 s^{1/3} + 2^{-4/9} 3^{1/3} s^{-1/9} r, with
// h(s(h)) = h + O(h^{-5/3}).
struct PassageTWMap {
  double s_of_h = 0.0;
  double h_of_s_check = 0.0;
};
PassageTWMap passage_tw_maps(double h, double r);

// upper-tail bound C e^{-h^2/2 + 4 sqrt(s h)}/h, valid for 0 <= s <= h and
// h above a threshold
double tail_rhs(double s, double h, double C, double h_threshold = 3.0);

struct TailRatio {
  double lhs = 0.0;  // 1 - cdf_Hs(s, h)
  double rhs = 0.0;
  double ratio = 0.0;
  bool trusted = true;  // false when lhs is below the determinant accuracy floor
};
TailRatio tail_empirical_ratio(double s, double h, double C,
                               const FredholmSpec& fspec = {});

// least-squares fit of beta in log(lhs) ~ -h^2/2 + beta sqrt(s h) + const
// (diagnostic for the 2+o(1) refinement; not a pass/fail gate)
struct TailExponentFit {
  double beta = 0.0;
  double intercept = 0.0;
};
TailExponentFit fit_tail_exponent(const std::vector<double>& s_values,
                                  const std::vector<double>& h_values,
                                  const std::vector<double>& lhs_values);

// unique positive roots of kappa - 1 - c/kappa^2 = 0 and e + 1 - c/e^2 = 0
double kappa_of_c(double c);
double e_of_c(double c);

// (kappa^2/2 - kappa + c/kappa) + (e^2/2 + e + c/e), the coefficient of h^2
// in the optimized tail exponent at s = c h^3
double coeff_sum(double c);

// critical constant c*: root of coeff_sum on (1e-6, 0.2); also verifies
// e(c) < kappa(c) on (0, c*]
double find_cstar();

}  // namespace befpp
