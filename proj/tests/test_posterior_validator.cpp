#include <catch2/catch_amalgamated.hpp>

#include <stdexcept>

#include "saa/json_io.hpp"
#include "saa/newsvendor.hpp"
#include "saa/posterior_validator.hpp"

using saa::NewsvendorModel;
using saa::validate;

TEST_CASE("a clearly feasible decision passes") {
  const auto problem = NewsvendorModel{}.problem();
  const auto report = validate({200.0}, problem, 1000, 0.99, 606);
  REQUIRE(report.constraints.size() == 1);
  CHECK(report.constraints[0].successes == 1000);
  CHECK(report.constraints[0].p_lb > 0.95);
  CHECK(report.constraints[0].pass);
  CHECK(report.pass);
}

TEST_CASE("a clearly infeasible decision fails") {
  const auto problem = NewsvendorModel{}.problem();
  const auto report = validate({0.0}, problem, 1000, 0.99, 607);
  CHECK(report.constraints[0].successes == 0);
  CHECK(report.constraints[0].p_lb == 0.0);
  CHECK_FALSE(report.constraints[0].pass);
  CHECK_FALSE(report.pass);
}

TEST_CASE("pass frequency grows with the validation sample") {
  // Q=120 has true satisfaction 0.6 > 0.5; with more fresh scenarios the
  // Clopper-Pearson lower bound concentrates above 0.5.
  const auto problem = NewsvendorModel{}.problem();
  const int seeds = 200;
  int pass_100 = 0, pass_1k = 0, pass_10k = 0;
  for (int s = 0; s < seeds; ++s) {
    pass_100 += validate({120.0}, problem, 100, 0.99, 3 * s + 0).pass;
    pass_1k += validate({120.0}, problem, 1000, 0.99, 3 * s + 1).pass;
    pass_10k += validate({120.0}, problem, 10000, 0.99, 3 * s + 2).pass;
  }
  // Exact pass probabilities: 0.307 at n'=100, 0.99997 at n'=1000, ~1 at 10^4.
  CHECK(pass_100 < pass_1k);
  CHECK(pass_100 <= 0.6 * seeds);
  CHECK(pass_1k >= 0.95 * seeds);
  CHECK(pass_10k == seeds);
}

TEST_CASE("validation is deterministic in the seed") {
  const auto problem = NewsvendorModel{}.problem();
  const auto a = validate({111.0}, problem, 500, 0.95, 12345);
  const auto b = validate({111.0}, problem, 500, 0.95, 12345);
  CHECK(a.constraints[0].successes == b.constraints[0].successes);
  CHECK(a.constraints[0].p_lb == b.constraints[0].p_lb);
}

TEST_CASE("multi-constraint reports fail when any constraint fails") {
  auto problem = NewsvendorModel{}.problem();
  // Second constraint that no decision can meet: requires Q - d - 300 >= 0.
  problem.constraints.push_back(saa::scalar_constraint(
      [](const saa::Decision& x, std::span<const double> xi) {
        return x[0] - xi[0] - 300.0;
      },
      0.5, "impossible"));
  const auto report = validate({200.0}, problem, 400, 0.95, 42);
  REQUIRE(report.constraints.size() == 2);
  CHECK(report.constraints[0].pass);
  CHECK_FALSE(report.constraints[1].pass);
  CHECK_FALSE(report.pass);
}

TEST_CASE("validation report serializes with the documented keys") {
  const auto problem = NewsvendorModel{}.problem();
  const auto report = validate({150.0}, problem, 300, 0.95, 9);
  const auto doc = saa::to_json(report);
  CHECK(doc["decision"] == saa::json::array({150.0}));
  REQUIRE(doc["constraints"].size() == 1);
  const auto& c = doc["constraints"][0];
  CHECK(c["label"] == "service-level");
  CHECK(c["n"] == 300);
  CHECK(c.contains("successes"));
  CHECK(c.contains("p_lb"));
  CHECK(c["beta"] == 0.5);
  CHECK(c.contains("pass"));
  CHECK(doc.contains("pass"));
}

TEST_CASE("parameter validation") {
  const auto problem = NewsvendorModel{}.problem();
  CHECK_THROWS_AS(validate({100.0}, problem, 0, 0.95, 1), std::domain_error);
  CHECK_THROWS_AS(validate({100.0}, problem, 100, 1.0, 1), std::domain_error);
}
