#pragma once

#include <algorithm>
#include <string>

#include "saa/problem.hpp"

// Single-period newsvendor under a non-stockout chance constraint: demand is
// Uniform(0,200), the order quantity Q ranges over the integers 0..200, cost
// equals the order quantity, and P(Q >= d) must reach the service level beta.
// The closed-form solution makes this the library's built-in check model.

namespace saa {

struct NewsvendorModel {
  double beta = 0.5;

  static constexpr double demand_lo = 0.0;
  static constexpr double demand_hi = 200.0;
  static constexpr int q_max = 200;

  DistributionSpec demand() const {
    return DistributionSpec::uniform_continuous(demand_lo, demand_hi);
  }

  // Minimum order quantity meeting the service level: the Uniform(0,200) CDF
  // is q/200, so q* = 200*beta. Q = q* itself is feasible (P(Q >= d) = beta).
  static double analytic_min_feasible_q(double beta) {
    return demand_hi * beta;
  }

  static double true_satisfaction(double q) {
    return std::clamp(q / demand_hi, 0.0, 1.0);
  }

  Problem problem() const {
    Problem p;
    p.decision_space.reserve(q_max + 1);
    for (int q = 0; q <= q_max; ++q)
      p.decision_space.push_back({static_cast<double>(q)});
    p.constraints.push_back(scalar_constraint(
        [](const Decision& x, std::span<const double> xi) {
          return x[0] - xi[0];  // non-stockout: Q - d >= 0
        },
        beta, "service-level"));
    p.xi = demand();
    p.objective = DeterministicObjective{
        [](const Decision& x) { return x[0]; }};  // cost = order quantity
    return p;
  }
};

}  // namespace saa
