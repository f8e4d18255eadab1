#pragma once

#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "saa/scenario.hpp"

// Chance-constrained problem model over a finite decision space.
//
// A constraint mapping G writes its m components for a (decision, xi) pair;
// the constraint is satisfied on a scenario when every component is >= 0.
// Constraints stated in <= 0 orientation must be negated at construction so
// the library only deals with one convention.

namespace saa {

using Decision = std::vector<double>;

struct ChanceConstraint {
  // Writes `arity` values G(x, xi) into `out`. Must be pure: evaluation may
  // run from several threads at once.
  std::function<void(const Decision&, std::span<const double>,
                     std::span<double>)>
      mapping;
  int arity = 1;
  double beta = 0.5;  // required satisfaction probability
  std::string label;
};

struct DeterministicObjective {
  std::function<double(const Decision&)> fn;
};

struct StochasticObjective {
  std::function<double(const Decision&, std::span<const double>)> fn;
};

using Objective = std::variant<DeterministicObjective, StochasticObjective>;

// Minimization problem: decision space, chance constraints, and the
// distribution of the random vector xi they are evaluated against.
struct Problem {
  std::vector<Decision> decision_space;
  std::vector<ChanceConstraint> constraints;
  DistributionSpec xi;
  Objective objective = DeterministicObjective{[](const Decision&) {
    return 0.0;  // pure satisfaction problems carry a constant cost
  }};

  bool has_stochastic_objective() const {
    return std::holds_alternative<StochasticObjective>(objective);
  }
};

// Convenience for single-component constraints.
inline ChanceConstraint scalar_constraint(
    std::function<double(const Decision&, std::span<const double>)> g,
    double beta, std::string label = {}) {
  ChanceConstraint c;
  c.mapping = [g = std::move(g)](const Decision& x,
                                 std::span<const double> xi,
                                 std::span<double> out) { out[0] = g(x, xi); };
  c.arity = 1;
  c.beta = beta;
  c.label = std::move(label);
  return c;
}

}  // namespace saa
