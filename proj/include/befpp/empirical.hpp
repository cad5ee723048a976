#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <vector>

#include "befpp/errors.hpp"

namespace befpp {

// Sorted ensemble of real observations with CDF and Kolmogorov-Smirnov
// queries against a continuous reference.
class EmpiricalCDF {
 public:
  EmpiricalCDF() = default;
  explicit EmpiricalCDF(std::vector<double> samples) : samples_(std::move(samples)) {
    if (samples_.empty()) throw ConfigError("EmpiricalCDF: empty sample set");
    std::sort(samples_.begin(), samples_.end());
  }

  std::size_t count() const { return samples_.size(); }
  const std::vector<double>& samples() const { return samples_; }

  // right-continuous empirical CDF
  double cdf(double x) const {
    auto it = std::upper_bound(samples_.begin(), samples_.end(), x);
    return static_cast<double>(it - samples_.begin()) / static_cast<double>(samples_.size());
  }

  // sup_x |F_hat(x) - F(x)| for a continuous reference F; the sup is
  // attained at a jump point, so F is evaluated once per distinct value.
  double ks_distance(const std::function<double(double)>& reference) const {
    const double n = static_cast<double>(samples_.size());
    double d = 0.0;
    std::size_t i = 0;
    while (i < samples_.size()) {
      std::size_t j = i;
      while (j < samples_.size() && samples_[j] == samples_[i]) ++j;
      const double F = reference(samples_[i]);
      d = std::max(d, std::max(static_cast<double>(j) / n - F,
                               F - static_cast<double>(i) / n));
      i = j;
    }
    return d;
  }

 private:
  std::vector<double> samples_;
};

double standard_normal_cdf(double x);

}  // namespace befpp
