#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace alphaleak::detail {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// log of a nonnegative mass: -inf at zero.
inline double safe_log(double x) { return x > 0.0 ? std::log(x) : -kInf; }

// log(sum exp(t_i)) over extended reals. Any +inf term dominates; an empty
// or all -inf input gives -inf.
inline double log_sum_exp(const std::vector<double>& terms) {
  double m = -kInf;
  for (double t : terms) {
    if (t == kInf) return kInf;
    m = std::max(m, t);
  }
  if (m == -kInf) return -kInf;
  double s = 0.0;
  for (double t : terms) {
    if (t != -kInf) s += std::exp(t - m);
  }
  return m + std::log(s);
}

}  // namespace alphaleak::detail
