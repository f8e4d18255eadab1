#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "oracles.hpp"
#include "saa/sample_planner.hpp"

using saa::classification_bands;
using saa::cp_lower_one_sided;
using saa::plan_multi_constraint;
using saa::plan_sample_size;
using saa::rejection_probability;
using saa::SamplePlan;
using saa::success_threshold;

TEST_CASE("success threshold ceiling convention") {
  CHECK(success_threshold(14, 0.5, 0.15) == 10);  // ceil(9.1)
  CHECK(success_threshold(20, 0.3, 0.15) == 9);   // exactly 9 stays 9
  CHECK(success_threshold(1, 0.5, 0.15) == 1);
  CHECK(success_threshold(13, 0.5, 0.15) == 9);   // ceil(8.45)
}

TEST_CASE("newsvendor design point: n_hat = 14, X = 10") {
  const auto plan = plan_sample_size(0.5, 0.15, 0.9, 10000);
  CHECK(plan.n_hat == 14);
  CHECK(plan.success_threshold == 10);
  CHECK(plan.p_lb_at_plan == Catch::Approx(0.508034786222999).margin(1e-9));
  CHECK(plan.p_ub_at_plan == Catch::Approx(0.869060596293457).margin(1e-9));
  CHECK(plan.p_lb_at_plan >= plan.beta);
}

TEST_CASE("returned n_hat is minimal") {
  // Every smaller N must fail to clear beta; the bound is not monotone in N
  // (the ceiling bites differently at each N), hence the full scan.
  for (int n = 1; n < 14; ++n) {
    const int x = success_threshold(n, 0.5, 0.15);
    CHECK(cp_lower_one_sided(n, x, 0.9) < 0.5);
  }
  for (const auto& [beta, theta, alpha] :
       {std::tuple{0.5, 0.15, 0.9}, {0.8, 0.1, 0.9}, {0.6, 0.2, 0.95},
        {0.3, 0.25, 0.8}}) {
    const auto plan = plan_sample_size(beta, theta, alpha, 10000);
    REQUIRE(plan.n_hat <= 200);
    for (int n = 1; n < plan.n_hat; ++n)
      CHECK(cp_lower_one_sided(n, success_threshold(n, beta, theta), alpha) <
            beta);
  }
}

TEST_CASE("parameter errors") {
  CHECK_THROWS_WITH(plan_sample_size(0.5, 0.6, 0.9), "theta out of range");
  CHECK_THROWS_WITH(plan_sample_size(0.5, 0.0, 0.9), "theta out of range");
  CHECK_THROWS_WITH(plan_sample_size(0.5, -0.1, 0.9), "theta out of range");
  CHECK_THROWS_WITH(plan_sample_size(0.9, 0.05, 0.95, 10), "n_max exceeded");
  CHECK_THROWS_AS(plan_sample_size(0.0, 0.1, 0.9), std::domain_error);
  CHECK_THROWS_AS(plan_sample_size(0.5, 0.1, 1.0), std::domain_error);
}

TEST_CASE("multi-constraint planning takes the maximum") {
  const std::vector<std::pair<double, double>> one = {{0.5, 0.15}};
  CHECK(plan_multi_constraint(one, 0.9).overall_n_hat == 14);

  const std::vector<std::pair<double, double>> twin = {{0.5, 0.15},
                                                       {0.5, 0.15}};
  const auto twin_plan = plan_multi_constraint(twin, 0.9);
  CHECK(twin_plan.overall_n_hat == 14);
  CHECK(twin_plan.per_constraint.size() == 2);

  const std::vector<std::pair<double, double>> mixed = {{0.5, 0.15},
                                                        {0.8, 0.1}};
  const auto mixed_plan = plan_multi_constraint(mixed, 0.9);
  const int expected = std::max(plan_sample_size(0.5, 0.15, 0.9).n_hat,
                                plan_sample_size(0.8, 0.1, 0.9).n_hat);
  CHECK(mixed_plan.overall_n_hat == expected);

  CHECK_THROWS_AS(plan_multi_constraint({}, 0.9), std::domain_error);
}

TEST_CASE("classification bands at the newsvendor plan") {
  const auto plan = plan_sample_size(0.5, 0.15, 0.9);
  const auto bands = classification_bands(plan);
  CHECK(bands.reject_band_upper == Catch::Approx(0.508).margin(5e-4));
  CHECK(bands.midpoint == Catch::Approx(0.65).margin(1e-12));
  // 0.86906..., displayed as 0.8690 at four truncated decimals.
  CHECK(bands.accept_band_lower ==
        Catch::Approx(0.869060596293457).margin(1e-9));
  CHECK(bands.reject_band_upper < bands.midpoint);
  CHECK(bands.midpoint < bands.accept_band_lower);
  CHECK_FALSE(bands.in_decision_units.has_value());

  // Mapped through the Uniform(0,200) demand scale.
  const auto scaled =
      classification_bands(plan, [](double p) { return 200.0 * p; });
  REQUIRE(scaled.in_decision_units.has_value());
  CHECK((*scaled.in_decision_units)[0] == Catch::Approx(101.6).margin(0.02));
  CHECK((*scaled.in_decision_units)[1] == Catch::Approx(130.0).margin(1e-9));
  CHECK((*scaled.in_decision_units)[2] == Catch::Approx(173.8).margin(0.02));
}

TEST_CASE("band semantics: acceptance probability per band") {
  const auto plan = plan_sample_size(0.5, 0.15, 0.9);
  const auto accept_prob = [&](double p) {
    return 1.0 - rejection_probability(plan, p);
  };
  // Below the reject band the sampled problem accepts with prob <= 1-alpha.
  CHECK(accept_prob(0.40) <= 0.1);
  CHECK(accept_prob(plan.p_lb_at_plan) == Catch::Approx(0.1).margin(1e-6));
  // Between p_lb and beta+theta acceptance sits in (1-alpha, 0.5).
  CHECK(accept_prob(0.55) > 0.1);
  CHECK(accept_prob(0.55) < 0.5);
  // At the midpoint: exact summation gives 0.4227...
  CHECK(accept_prob(0.65) ==
        Catch::Approx(0.422722988938946).margin(1e-12));
  CHECK(accept_prob(0.65) > 0.4);
  CHECK(accept_prob(0.65) < 0.6);
  // Between beta+theta and p_ub acceptance sits in (0.5, alpha).
  CHECK(accept_prob(0.75) > 0.5);
  CHECK(accept_prob(0.75) < 0.9);
  // Above p_ub acceptance reaches alpha.
  CHECK(accept_prob(0.95) >= 0.9);
}

TEST_CASE("rejection probability extremes and guarantee") {
  const auto plan = plan_sample_size(0.5, 0.15, 0.9);
  CHECK(rejection_probability(plan, 0.0) == 1.0);
  CHECK(rejection_probability(plan, 1.0) == 0.0);
  // Exact value at p=0.5: 1 - 1471/16384.
  CHECK(rejection_probability(plan, 0.5) ==
        Catch::Approx(1.0 - 1471.0 / 16384.0).margin(1e-12));
  CHECK(rejection_probability(plan, 0.5) >= 0.9);
  // The a-priori guarantee: any truly infeasible p is rejected w.p. >= alpha.
  for (double p = 0.0; p <= 0.5 + 1e-12; p += 0.05)
    CHECK(rejection_probability(plan, p) >= 0.9);
  CHECK_THROWS_AS(rejection_probability(plan, 1.5), std::domain_error);
}

TEST_CASE("acceptance probability decays exponentially below the midpoint") {
  // Hoeffding envelope exp(-2 N (beta+theta-p)^2) dominates acceptance.
  const auto plan = plan_sample_size(0.5, 0.15, 0.9);
  for (double p = 0.05; p < 0.65; p += 0.025) {
    const double accept = 1.0 - rejection_probability(plan, p);
    const double envelope =
        std::exp(-2.0 * plan.n_hat * (0.65 - p) * (0.65 - p));
    CHECK(accept <= envelope + 1e-9);
  }
}

TEST_CASE("acceptance probability is monotone in p") {
  const auto plan = plan_sample_size(0.5, 0.15, 0.9);
  double prev = -1.0;
  for (double p = 0.0; p <= 1.0 + 1e-12; p += 0.01) {
    const double accept = 1.0 - rejection_probability(plan, std::min(p, 1.0));
    CHECK(accept >= prev - 1e-12);
    prev = accept;
  }
}

TEST_CASE("smaller theta costs more samples") {
  int prev = 0;
  for (double theta : {0.15, 0.10, 0.05}) {
    const int n_hat = plan_sample_size(0.5, theta, 0.9).n_hat;
    CHECK(n_hat >= prev);
    prev = n_hat;
  }
}
