#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "saa/confidence.hpp"
#include "saa/saa_core.hpp"

// A-posteriori check of a candidate decision: re-estimate each constraint's
// satisfaction probability on a larger fresh sample and report the achieved
// Clopper-Pearson lower confidence bound. The validation sample must never be
// the sample the decision was solved on (reuse biases the estimate); callers
// pass a seed disjoint from the solving seeds.

namespace saa {

struct ConstraintValidation {
  std::string label;
  int n_used = 0;
  int successes = 0;
  double p_lb = 0.0;
  double beta = 0.0;
  bool pass = false;  // p_lb >= beta
};

struct ValidationReport {
  Decision decision;
  std::vector<ConstraintValidation> constraints;
  bool pass = false;  // all constraints pass
};

inline ValidationReport validate(const Decision& decision,
                                 const Problem& problem, int n_prime,
                                 double alpha_prime, std::uint64_t seed) {
  detail::require(n_prime >= 1, "validation sample size must be positive");
  detail::require(alpha_prime > 0.0 && alpha_prime < 1.0,
                  "confidence level must be inside (0,1)");
  ValidationReport report;
  report.decision = decision;
  report.pass = true;
  for (std::size_t c = 0; c < problem.constraints.size(); ++c) {
    const auto& constraint = problem.constraints[c];
    const ScenarioSet fresh =
        generate_scenarios(problem.xi, n_prime, rng::substream(seed, c));
    ConstraintValidation v;
    v.label = constraint.label;
    v.n_used = n_prime;
    v.successes = detail::success_count(decision, constraint, fresh);
    v.p_lb = cp_lower_one_sided(n_prime, v.successes, alpha_prime);
    v.beta = constraint.beta;
    v.pass = v.p_lb >= constraint.beta;
    report.pass = report.pass && v.pass;
    report.constraints.push_back(std::move(v));
  }
  return report;
}

}  // namespace saa
