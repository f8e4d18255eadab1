#pragma once

#include <cmath>

#include <json.hpp>

#include "saa/bounds.hpp"
#include "saa/posterior_validator.hpp"
#include "saa/sample_planner.hpp"

// JSON views of the report types. Key order is part of the interface
// (consumers diff the bytes), so everything is built on ordered_json.
// Infinite costs serialize as the string "inf".

namespace saa {

using json = nlohmann::ordered_json;

inline json json_cost(double cost) {
  if (std::isinf(cost)) return "inf";
  return cost;
}

inline json to_json(const SamplePlan& plan) {
  return {{"n_hat", plan.n_hat},
          {"success_threshold", plan.success_threshold},
          {"beta", plan.beta},
          {"theta", plan.theta},
          {"alpha", plan.alpha},
          {"p_lb", plan.p_lb_at_plan},
          {"p_ub", plan.p_ub_at_plan}};
}

inline json to_json(const MultiConstraintPlan& plan) {
  json constraints = json::array();
  for (const auto& p : plan.per_constraint) constraints.push_back(to_json(p));
  return {{"constraints", constraints}, {"n_hat", plan.overall_n_hat}};
}

inline json to_json(const BandReport& report) {
  json doc = {{"reject_band_upper", report.reject_band_upper},
              {"midpoint", report.midpoint},
              {"accept_band_lower", report.accept_band_lower}};
  if (report.in_decision_units) {
    const auto& units = *report.in_decision_units;
    doc["in_decision_units"] = {{"reject_band_upper", units[0]},
                                {"midpoint", units[1]},
                                {"accept_band_lower", units[2]}};
  }
  return doc;
}

inline json to_json(const BoundsReport& report) {
  json costs = json::array();
  for (double c : report.sorted_costs) costs.push_back(json_cost(c));
  return {{"m", static_cast<int>(report.sorted_costs.size())},
          {"alpha", report.alpha},
          {"delta", report.delta},
          {"l_index", report.l_index},
          {"u_index", report.u_index},
          {"lower_bound", json_cost(report.lower_bound)},
          {"upper_bound", json_cost(report.upper_bound)},
          {"verdict", to_string(report.verdict)},
          {"costs", costs}};
}

inline json to_json(const ValidationReport& report) {
  json constraints = json::array();
  for (const auto& c : report.constraints)
    constraints.push_back({{"label", c.label},
                           {"n", c.n_used},
                           {"successes", c.successes},
                           {"p_lb", c.p_lb},
                           {"beta", c.beta},
                           {"pass", c.pass}});
  return {{"decision", report.decision},
          {"constraints", constraints},
          {"pass", report.pass}};
}

}  // namespace saa
