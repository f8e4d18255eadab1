#pragma once

#include "saa/special_functions.hpp"

// Clopper-Pearson exact binomial confidence intervals in the Beta-quantile
// closed form (Clopper & Pearson 1934; see also
// https://en.wikipedia.org/wiki/Binomial_proportion_confidence_interval).
//
// Conventions: the lower endpoint is 0 when X = 0 and the upper endpoint is 1
// when X = N. One-sided intervals put the whole tail mass 1-alpha on their
// single side, which reproduces the min/max definitional forms
//   lower = min{p : P(Bin(N,p) >= X) >= 1-alpha}
//   upper = max{p : P(Bin(N,p) <= X) >= 1-alpha}.

namespace saa {

enum class IntervalSide { two_sided, lower_one_sided, upper_one_sided };

struct ConfidenceInterval {
  double lower = 0.0;
  double upper = 1.0;
  double confidence = 0.0;
  IntervalSide sided = IntervalSide::two_sided;
};

namespace detail {
inline void check_cp_args(int n, int x, double alpha) {
  require(n >= 1, "trial count must be positive");
  require(x >= 0 && x <= n, "success count outside [0,N]");
  require(alpha > 0.0 && alpha < 1.0, "confidence level must be inside (0,1)");
}
}  // namespace detail

inline double cp_lower_one_sided(int n, int x, double alpha) {
  detail::check_cp_args(n, x, alpha);
  if (x == 0) return 0.0;
  return inv_reg_inc_beta(1.0 - alpha, x, n - x + 1.0);
}

inline double cp_upper_one_sided(int n, int x, double alpha) {
  detail::check_cp_args(n, x, alpha);
  if (x == n) return 1.0;
  return inv_reg_inc_beta(alpha, x + 1.0, n - x);
}

inline ConfidenceInterval cp_two_sided(int n, int x, double alpha) {
  detail::check_cp_args(n, x, alpha);
  const double tail = (1.0 - alpha) / 2.0;
  ConfidenceInterval ci;
  ci.lower = x == 0 ? 0.0 : inv_reg_inc_beta(tail, x, n - x + 1.0);
  ci.upper = x == n ? 1.0 : inv_reg_inc_beta(1.0 - tail, x + 1.0, n - x);
  ci.confidence = alpha;
  ci.sided = IntervalSide::two_sided;
  return ci;
}

}  // namespace saa
