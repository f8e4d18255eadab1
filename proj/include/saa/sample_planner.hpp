#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "saa/confidence.hpp"

// A-priori sample-size planning. For a target satisfaction probability beta,
// error tolerance theta and confidence alpha, the plan is the smallest N such
// that the one-sided Clopper-Pearson lower bound at X = ceil(N*(beta+theta))
// successes clears beta. Solving the sampled problem at that N then rejects
// any decision whose true satisfaction probability is below beta with
// probability at least alpha.

namespace saa {

struct SamplePlan {
  int n_hat = 0;              // planned sample size
  int success_threshold = 0;  // X = ceil(n_hat * (beta + theta))
  double beta = 0.0;
  double theta = 0.0;
  double alpha = 0.0;
  double p_lb_at_plan = 0.0;  // cp_lower_one_sided(n_hat, X, alpha)
  double p_ub_at_plan = 0.0;  // cp_upper_one_sided(n_hat, X, alpha)
};

struct MultiConstraintPlan {
  std::vector<SamplePlan> per_constraint;
  int overall_n_hat = 0;  // max over the per-constraint plans
};

// Misclassification bands: true satisfaction probabilities below
// reject_band_upper are rejected with probability >= alpha; only those above
// accept_band_lower are accepted with probability >= alpha.
struct BandReport {
  double reject_band_upper = 0.0;  // p_lb at the plan
  double midpoint = 0.0;           // beta + theta
  double accept_band_lower = 0.0;  // p_ub at the plan
  // Thresholds pushed through a caller-supplied monotone map to decision
  // units, when one was given.
  std::optional<std::array<double, 3>> in_decision_units;
};

// Success-count threshold for the acceptance rule "fraction >= beta+theta".
// An exactly-integer n*(beta+theta) keeps that integer; the epsilon guards
// against the product landing one ulp above it.
inline int success_threshold(int n, double beta, double theta) {
  return static_cast<int>(std::ceil(n * (beta + theta) - 1e-9));
}

namespace detail {
inline void check_plan_args(double beta, double theta, double alpha,
                            int n_max) {
  require(beta > 0.0 && beta < 1.0, "beta must be inside (0,1)");
  if (!(theta > 0.0 && theta < 1.0 - beta))
    throw std::domain_error("theta out of range");
  require(alpha > 0.0 && alpha < 1.0, "alpha must be inside (0,1)");
  require(n_max >= 1, "n_max must be positive");
}
}  // namespace detail

// Smallest N in [1, n_max] whose lower confidence bound clears beta. The scan
// is linear: the ceiling in X makes p_lb non-monotone in N, so binary search
// would be unsound.
inline SamplePlan plan_sample_size(double beta, double theta, double alpha,
                                   int n_max = 1'000'000) {
  detail::check_plan_args(beta, theta, alpha, n_max);
  for (int n = 1; n <= n_max; ++n) {
    const int x = success_threshold(n, beta, theta);
    const double p_lb = cp_lower_one_sided(n, x, alpha);
    if (p_lb >= beta) {
      SamplePlan plan;
      plan.n_hat = n;
      plan.success_threshold = x;
      plan.beta = beta;
      plan.theta = theta;
      plan.alpha = alpha;
      plan.p_lb_at_plan = p_lb;
      plan.p_ub_at_plan = cp_upper_one_sided(n, x, alpha);
      return plan;
    }
  }
  throw std::runtime_error("n_max exceeded");
}

// Plans each constraint separately and picks the largest sample size.
inline MultiConstraintPlan plan_multi_constraint(
    std::span<const std::pair<double, double>> beta_theta_pairs, double alpha,
    int n_max = 1'000'000) {
  if (beta_theta_pairs.empty())
    throw std::domain_error("constraint list must be nonempty");
  MultiConstraintPlan result;
  for (const auto& [beta, theta] : beta_theta_pairs) {
    result.per_constraint.push_back(
        plan_sample_size(beta, theta, alpha, n_max));
    result.overall_n_hat =
        std::max(result.overall_n_hat, result.per_constraint.back().n_hat);
  }
  return result;
}

inline BandReport classification_bands(const SamplePlan& plan) {
  BandReport report;
  report.reject_band_upper = plan.p_lb_at_plan;
  report.midpoint = plan.beta + plan.theta;
  report.accept_band_lower = plan.p_ub_at_plan;
  return report;
}

inline BandReport classification_bands(
    const SamplePlan& plan, const std::function<double(double)>& to_units) {
  BandReport report = classification_bands(plan);
  report.in_decision_units = {to_units(report.reject_band_upper),
                              to_units(report.midpoint),
                              to_units(report.accept_band_lower)};
  return report;
}

// Exact probability that the sampled problem rejects a decision whose true
// satisfaction probability is p_true: P(Bin(n_hat, p_true) < X).
inline double rejection_probability(const SamplePlan& plan, double p_true) {
  detail::require(p_true >= 0.0 && p_true <= 1.0,
                  "true probability outside [0,1]");
  return binom_cdf({plan.n_hat, p_true}, plan.success_threshold - 1);
}

}  // namespace saa
