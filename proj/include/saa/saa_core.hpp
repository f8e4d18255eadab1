#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "saa/problem.hpp"
#include "saa/sample_planner.hpp"

// The sampled average approximate problem S^N: a decision is SAA-feasible
// when, for every constraint, the number of scenarios with G >= 0 reaches
// ceil(N * (beta_i + theta)). Solving S^N is exhaustive enumeration of the
// finite decision space.

namespace saa {

namespace detail {

// Counts scenarios where every component of G(x, xi) is >= 0. The closed
// inequality mirrors the true constraint; for continuous xi the open/closed
// distinction matters with probability zero. NaN components count as failure.
inline int success_count(const Decision& decision, const ChanceConstraint& c,
                         const ScenarioSet& scenarios) {
  double small_buf[8];
  std::vector<double> big_buf;
  std::span<double> out;
  if (c.arity <= 8) {
    out = {small_buf, static_cast<std::size_t>(c.arity)};
  } else {
    big_buf.resize(c.arity);
    out = big_buf;
  }
  int count = 0;
  for (int j = 0; j < scenarios.n; ++j) {
    c.mapping(decision, scenarios.row(j), out);
    bool ok = true;
    for (double g : out)
      if (!(g >= 0.0)) {
        ok = false;
        break;
      }
    count += ok;
  }
  return count;
}

// Mean over scenarios, summed in sorted order so the result is invariant
// under permutation of the scenario rows.
inline double sample_mean_objective(const StochasticObjective& objective,
                                    const Decision& decision,
                                    const ScenarioSet& scenarios) {
  std::vector<double> values;
  values.reserve(scenarios.n);
  for (int j = 0; j < scenarios.n; ++j)
    values.push_back(objective.fn(decision, scenarios.row(j)));
  std::sort(values.begin(), values.end());
  return std::accumulate(values.begin(), values.end(), 0.0) / scenarios.n;
}

}  // namespace detail

// Empirical fraction of scenarios on which the constraint holds.
inline double satisfaction_rate(const Decision& decision,
                                const ChanceConstraint& constraint,
                                const ScenarioSet& scenarios) {
  detail::require(scenarios.n >= 1, "scenario set must be nonempty");
  return static_cast<double>(
             detail::success_count(decision, constraint, scenarios)) /
         scenarios.n;
}

// True iff every constraint reaches its success-count threshold on its own
// scenario set.
inline bool is_saa_feasible(const Decision& decision, const Problem& problem,
                            std::span<const ScenarioSet> scenarios,
                            double theta) {
  if (scenarios.size() != problem.constraints.size())
    throw std::invalid_argument(
        "scenario set count does not match constraint count");
  for (std::size_t i = 0; i < problem.constraints.size(); ++i) {
    const auto& c = problem.constraints[i];
    const int threshold = success_threshold(scenarios[i].n, c.beta, theta);
    if (detail::success_count(decision, c, scenarios[i]) < threshold)
      return false;
  }
  return true;
}

struct SaaSolution {
  Decision decision;
  double cost = 0.0;
};

// Exhaustively enumerates the decision space and returns a cheapest
// SAA-feasible decision, or nullopt when none is feasible. Stochastic
// objectives are estimated as the sample mean over `objective_scenarios`
// (required in that case). Cost ties go to the lexicographically smallest
// decision vector.
inline std::optional<SaaSolution> solve_saa(
    const Problem& problem, std::span<const ScenarioSet> scenarios,
    double theta, const ScenarioSet* objective_scenarios = nullptr) {
  const auto* stochastic = std::get_if<StochasticObjective>(&problem.objective);
  if (stochastic && objective_scenarios == nullptr)
    throw std::invalid_argument(
        "stochastic objective requires a dedicated objective scenario set");
  std::optional<SaaSolution> best;
  for (const Decision& decision : problem.decision_space) {
    if (!is_saa_feasible(decision, problem, scenarios, theta)) continue;
    double cost;
    if (stochastic)
      cost = detail::sample_mean_objective(*stochastic, decision,
                                           *objective_scenarios);
    else
      cost = std::get<DeterministicObjective>(problem.objective).fn(decision);
    if (!best || cost < best->cost ||
        (cost == best->cost && decision < best->decision))
      best = SaaSolution{decision, cost};
  }
  return best;
}

}  // namespace saa
