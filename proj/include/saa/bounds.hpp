#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "saa/saa_core.hpp"

// Replication-based statistical bounds. M independent SAA solves give M
// costs; with confidence delta the L-th smallest is a lower bound and the
// U-th smallest an upper bound for the optimum of the true problem.
//
// L and U come from the Bin(M, 1-alpha) distribution of the number of
// replications whose solution is infeasible for the true problem:
//   L = max{k in [1,M] : P(Bin(M,1-alpha) <= k-1) <= (1-delta)/2}
//   U = min{k in [1,M] : P(Bin(M,1-alpha) <= k)   >= (1+delta)/2}

namespace saa {

struct MTooSmallError : std::runtime_error {
  MTooSmallError() : std::runtime_error("M too small") {}
};

struct ReplicationOutcome {
  int index = 0;  // 1-based replication id
  double cost = std::numeric_limits<double>::infinity();
  std::optional<Decision> decision;  // absent iff cost is infinite
  // Student-t interval around the cost estimate; stochastic objectives only.
  std::optional<std::pair<double, double>> cost_interval;
};

struct OrderStatIndices {
  std::optional<int> l;  // absent when no index qualifies (M too small)
  int u = 0;
};

enum class Verdict { bounds, infeasible_at_delta, inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::bounds: return "bounds";
    case Verdict::infeasible_at_delta: return "infeasible_at_delta";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

struct BoundsReport {
  std::vector<double> sorted_costs;
  int l_index = 0;  // 1-based positions into sorted_costs
  int u_index = 0;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  double delta = 0.0;
  double alpha = 0.0;
  Verdict verdict = Verdict::bounds;
};

inline OrderStatIndices order_statistic_indices(int m, double alpha,
                                                double delta) {
  detail::require(m >= 1, "replication count must be positive");
  detail::require(alpha > 0.0 && alpha < 1.0, "alpha must be inside (0,1)");
  detail::require(delta > 0.0 && delta < 1.0, "delta must be inside (0,1)");
  const BinomialSpec infeasible_runs{m, 1.0 - alpha};
  const double lo_tail = (1.0 - delta) / 2.0;
  const double hi_tail = (1.0 + delta) / 2.0;
  OrderStatIndices idx;
  for (int k = 1; k <= m; ++k) {
    // The qualifying set for L is a prefix in k; keep the last member.
    if (binom_cdf(infeasible_runs, k - 1) <= lo_tail) idx.l = k;
    if (idx.u == 0 && binom_cdf(infeasible_runs, k) >= hi_tail) idx.u = k;
  }
  if (idx.u == 0) throw MTooSmallError{};  // unreachable: cdf(m) = 1
  return idx;
}

// Mean +/- t-quantile * s/sqrt(n) interval for the expectation of the
// samples.
inline std::pair<double, double> cost_interval(std::span<const double> samples,
                                               double confidence) {
  if (samples.size() < 2)
    throw std::invalid_argument("cost interval needs at least two samples");
  detail::require(confidence > 0.0 && confidence < 1.0,
                  "confidence must be inside (0,1)");
  const auto n = static_cast<double>(samples.size());
  double mean = 0.0;
  for (double v : samples) mean += v;
  mean /= n;
  double ss = 0.0;
  for (double v : samples) ss += (v - mean) * (v - mean);
  const double stddev = std::sqrt(ss / (n - 1.0));
  const double t = student_t_quantile((1.0 + confidence) / 2.0,
                                      static_cast<int>(samples.size()) - 1);
  const double half = t * stddev / std::sqrt(n);
  return {mean - half, mean + half};
}

struct ReplicationConfig {
  int jobs = 1;
  double interval_confidence = 0.95;  // for stochastic-objective intervals
  int objective_sample_size = 0;      // 0: use the plan's n_hat
};

// One SAA solve on scenario sets derived from (master_seed, index). Exposed
// so a single solve and replication i of a batch are the same computation.
inline ReplicationOutcome run_single_replication(
    const Problem& problem, const SamplePlan& plan, int index,
    std::uint64_t master_seed, const ReplicationConfig& config = {}) {
  const std::uint64_t rep_seed = rng::substream(master_seed, index);
  std::vector<ScenarioSet> sets;
  sets.reserve(problem.constraints.size());
  for (std::size_t c = 0; c < problem.constraints.size(); ++c)
    sets.push_back(
        generate_scenarios(problem.xi, plan.n_hat, rng::substream(rep_seed, c)));

  std::optional<ScenarioSet> objective_set;
  if (problem.has_stochastic_objective()) {
    const int obj_n = config.objective_sample_size > 0
                          ? config.objective_sample_size
                          : plan.n_hat;
    objective_set = generate_scenarios(
        problem.xi, obj_n, rng::substream(rep_seed, rng::kObjectiveStreamTag));
  }

  ReplicationOutcome outcome;
  outcome.index = index;
  const auto solution = solve_saa(problem, sets, plan.theta,
                                  objective_set ? &*objective_set : nullptr);
  if (!solution) return outcome;  // cost stays +inf
  outcome.cost = solution->cost;
  outcome.decision = solution->decision;
  if (objective_set) {
    const auto& objective = std::get<StochasticObjective>(problem.objective);
    std::vector<double> samples;
    samples.reserve(objective_set->n);
    for (int j = 0; j < objective_set->n; ++j)
      samples.push_back(objective.fn(solution->decision, objective_set->row(j)));
    outcome.cost_interval = cost_interval(samples, config.interval_confidence);
  }
  return outcome;
}

// M independent replications. Each outcome depends only on (master_seed,
// index), so results are identical for any jobs count and any execution
// order.
inline std::vector<ReplicationOutcome> run_replications(
    const Problem& problem, const SamplePlan& plan, int m,
    std::uint64_t master_seed, const ReplicationConfig& config = {}) {
  detail::require(m >= 1, "replication count must be positive");
  std::vector<ReplicationOutcome> outcomes(m);
  const int jobs = std::clamp(config.jobs, 1, m);
  if (jobs == 1) {
    for (int i = 1; i <= m; ++i)
      outcomes[i - 1] =
          run_single_replication(problem, plan, i, master_seed, config);
    return outcomes;
  }
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  for (int w = 0; w < jobs; ++w)
    workers.emplace_back([&, w] {
      for (int i = w + 1; i <= m; i += jobs)
        outcomes[i - 1] =
            run_single_replication(problem, plan, i, master_seed, config);
    });
  for (auto& t : workers) t.join();
  return outcomes;
}

// Sorts the replication costs (+inf last, ties by replication index) and
// reads off the order-statistic bounds. Verdicts: both positions infinite
// means infeasibility is established at confidence delta; an infinite upper
// position alone means infeasibility cannot be ruled out.
inline BoundsReport compute_bounds(std::span<const ReplicationOutcome> outcomes,
                                   double alpha, double delta) {
  detail::require(!outcomes.empty(), "outcome list must be nonempty");
  const int m = static_cast<int>(outcomes.size());
  std::vector<std::pair<double, int>> keyed;
  keyed.reserve(m);
  for (const auto& o : outcomes) keyed.emplace_back(o.cost, o.index);
  std::sort(keyed.begin(), keyed.end());

  const OrderStatIndices idx = order_statistic_indices(m, alpha, delta);
  if (!idx.l || idx.u > m) throw MTooSmallError{};

  BoundsReport report;
  report.sorted_costs.reserve(m);
  for (const auto& [cost, index] : keyed) report.sorted_costs.push_back(cost);
  report.l_index = *idx.l;
  report.u_index = idx.u;
  report.lower_bound = report.sorted_costs[report.l_index - 1];
  report.upper_bound = report.sorted_costs[report.u_index - 1];
  report.delta = delta;
  report.alpha = alpha;
  const bool l_inf = std::isinf(report.lower_bound);
  const bool u_inf = std::isinf(report.upper_bound);
  report.verdict = l_inf && u_inf ? Verdict::infeasible_at_delta
                   : u_inf       ? Verdict::inconclusive
                                 : Verdict::bounds;
  return report;
}

enum class CostOrdering { less, greater, incomparable };

// Costs with overlapping confidence intervals cannot be ordered.
inline CostOrdering compare_stochastic_costs(const ReplicationOutcome& a,
                                             const ReplicationOutcome& b) {
  if (!a.cost_interval || !b.cost_interval)
    throw std::invalid_argument("outcomes carry no cost intervals");
  if (a.cost_interval->second < b.cost_interval->first)
    return CostOrdering::less;
  if (b.cost_interval->second < a.cost_interval->first)
    return CostOrdering::greater;
  return CostOrdering::incomparable;
}

enum class TotalizeStrategy { increase_m, simulate, saa_objective };

struct TotalizedOrder {
  // Set by the increase_m strategy: caller should rerun with a larger M
  // instead of consuming `ordered`.
  bool needs_more_replications = false;
  std::vector<ReplicationOutcome> ordered;
};

// Re-estimates the cost of a decision on one fresh evaluation sample of size
// eval_n (common random numbers across decisions).
inline std::function<double(const Decision&)> make_resimulator(
    const Problem& problem, int eval_n, std::uint64_t seed) {
  const auto* objective = std::get_if<StochasticObjective>(&problem.objective);
  if (!objective)
    throw std::invalid_argument("resimulation needs a stochastic objective");
  auto scenarios = std::make_shared<ScenarioSet>(generate_scenarios(
      problem.xi, eval_n, rng::substream(seed, rng::kResimulateStreamTag)));
  return [objective, scenarios](const Decision& decision) {
    return detail::sample_mean_objective(*objective, decision, *scenarios);
  };
}

// Turns partially ordered stochastic outcomes into a total order. The
// default strategy sorts by the SAA point estimate; `simulate` re-estimates
// each finite cost through `reestimate` first; `increase_m` just reports
// that more replications are needed. Ties break on the lexicographically
// smallest decision, then the replication index.
inline TotalizedOrder totalize_order(
    std::vector<ReplicationOutcome> outcomes, TotalizeStrategy strategy,
    const std::function<double(const Decision&)>& reestimate = {}) {
  TotalizedOrder result;
  if (strategy == TotalizeStrategy::increase_m) {
    result.needs_more_replications = true;
    result.ordered = std::move(outcomes);
    return result;
  }
  if (strategy == TotalizeStrategy::simulate) {
    if (!reestimate)
      throw std::invalid_argument("simulate strategy needs a re-estimator");
    for (auto& o : outcomes)
      if (o.decision) {
        o.cost = reestimate(*o.decision);
        o.cost_interval.reset();  // no longer describes the cost
      }
  }
  std::sort(outcomes.begin(), outcomes.end(),
            [](const ReplicationOutcome& a, const ReplicationOutcome& b) {
              if (a.cost != b.cost) return a.cost < b.cost;
              if (a.decision && b.decision && *a.decision != *b.decision)
                return *a.decision < *b.decision;
              return a.index < b.index;
            });
  result.ordered = std::move(outcomes);
  return result;
}

}  // namespace saa
