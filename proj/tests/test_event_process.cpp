#include <array>
#include <cmath>
#include <random>

#include "doctest.h"
#include "safetysim/event_process.hpp"
#include "test_support.hpp"

using namespace safetysim;
using doctest::Approx;

TEST_CASE("xi_of_theta") {
  CHECK(xi_of_theta(0.55, 0.63) == Approx(0.2835).epsilon(1e-12));
  CHECK(xi_of_theta(1.0, 0.37) == 0.0);
  CHECK(xi_of_theta(0.0, 0.45) == 0.45);

  // Affine and decreasing in theta.
  for (double theta = 0.0; theta < 1.0; theta += 0.05) {
    CHECK(xi_of_theta(theta + 0.05, 0.6) < xi_of_theta(theta, 0.6));
  }
}

TEST_CASE("decay_theta") {
  CHECK(decay_theta(0.55, 0.95) == Approx(0.5225).epsilon(1e-12));
  CHECK(decay_theta(0.3, 1.0) == 0.3);
  CHECK(decay_theta(0.3, 0.0) == 0.0);

  double theta = 0.55;
  for (int n = 1; n <= 365; ++n) {
    theta = decay_theta(theta, 0.98);
    CHECK(theta == Approx(0.55 * std::pow(0.98, n)).epsilon(1e-12));
  }
}

TEST_CASE("sample_event_counts") {
  Rng rng(11);

  SUBCASE("xi = 0 produces no unsafe activity") {
    for (int i = 0; i < 1000; ++i) {
      const auto c = sample_event_counts(rng, 17.0, 0.0, 0.04);
      CHECK(c.incidents == 0);
      CHECK(c.unsafe == 0);
    }
  }

  SUBCASE("area A incident mean over 1e6 draws") {
    // Analytic mean alpha * xi * lambda = 0.04 * 0.55 * 17 = 0.374.
    double sum = 0.0;
    constexpr int kDraws = 1'000'000;
    for (int i = 0; i < kDraws; ++i) {
      sum += static_cast<double>(sample_event_counts(rng, 17.0, 0.55, 0.04).incidents);
    }
    CHECK(std::abs(sum / kDraws - 0.374) <= 0.002);
  }

  SUBCASE("alpha = xi = 1 turns every task into an incident") {
    double sum = 0.0;
    constexpr int kDraws = 100'000;
    for (int i = 0; i < kDraws; ++i) {
      const auto c = sample_event_counts(rng, 6.0, 1.0, 1.0);
      CHECK(c.unsafe == 0);
      CHECK(c.safe == 0);
      sum += static_cast<double>(c.incidents);
    }
    CHECK(sum / kDraws == Approx(6.0).epsilon(0.01));
  }
}

TEST_CASE("independent Poissons match the two-stage multinomial split") {
  const std::array<std::array<double, 3>, 3> params = {{
      {17.0, 0.55, 0.04},
      {22.0, 0.4, 0.01},
      {8.0, 0.9, 0.5},
  }};
  for (const auto& [lambda, xi, alpha] : params) {
    CAPTURE(lambda);
    CAPTURE(xi);
    CAPTURE(alpha);
    Rng rng(1234);
    std::mt19937_64 oracle(98765);
    std::vector<testing::CountTriple> direct, two_stage;
    for (int i = 0; i < 100'000; ++i) {
      const auto c = sample_event_counts(rng, lambda, xi, alpha);
      direct.emplace_back(c.incidents, c.unsafe, c.safe);
      two_stage.push_back(testing::two_stage_counts(oracle, lambda, xi, alpha));
    }
    CHECK(testing::homogeneity_p_value(direct, two_stage) >= 0.001);
  }
}

TEST_CASE("sample_ahl") {
  Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    CHECK(sample_ahl(rng, {1, 0, 0, 0, 0, 0}) == 0);
    CHECK(sample_ahl(rng, {0, 0, 0, 0, 0, 1}) == 5);
  }

  const HurtVector area_a = {0.50, 0.35, 0.13, 0.02, 0.0, 0.0};
  std::array<double, kHurtLevels> freq{};
  constexpr int kDraws = 1'000'000;
  for (int i = 0; i < kDraws; ++i) freq[static_cast<std::size_t>(sample_ahl(rng, area_a))] += 1.0;
  for (std::size_t j = 0; j < kHurtLevels; ++j) {
    CHECK(std::abs(freq[j] / kDraws - area_a[j]) <= 0.002);
  }
}

TEST_CASE("sample_phl") {
  Rng rng(6);

  SUBCASE("top level is forced") {
    for (int i = 0; i < 100; ++i) {
      CHECK(sample_phl(rng, {0.2, 0.2, 0.2, 0.2, 0.1, 0.1}, 5) == 5);
    }
  }

  SUBCASE("ahl = 0 keeps the distribution") {
    double ones = 0.0;
    constexpr int kDraws = 200'000;
    for (int i = 0; i < kDraws; ++i) {
      const auto phl = sample_phl(rng, {0.5, 0.5, 0, 0, 0, 0}, 0);
      REQUIRE(phl <= 1);
      ones += phl == 1 ? 1.0 : 0.0;
    }
    CHECK(std::abs(ones / kDraws - 0.5) <= 0.005);
  }

  SUBCASE("area C truncated at ahl = 2") {
    // 0.35/0.64, 0.28/0.64, 0.01/0.64
    const std::array<double, 3> expected = {0.546875, 0.4375, 0.015625};
    std::array<double, 3> freq{};
    constexpr int kDraws = 1'000'000;
    for (int i = 0; i < kDraws; ++i) {
      const auto phl = sample_phl(rng, {0.30, 0.06, 0.35, 0.28, 0.01, 0.0}, 2);
      REQUIRE(phl >= 2);
      REQUIRE(phl <= 4);
      freq[static_cast<std::size_t>(phl - 2)] += 1.0;
    }
    for (std::size_t k = 0; k < 3; ++k) {
      CHECK(std::abs(freq[k] / kDraws - expected[k]) <= 0.002);
    }
  }

  SUBCASE("no mass at or above ahl") {
    CHECK_THROWS_AS(sample_phl(rng, {0.5, 0.5, 0, 0, 0, 0}, 3),
                    DegenerateDistributionError);
  }
}

TEST_CASE("step_events") {
  const auto scenario = testing::case_study();

  SUBCASE("theta = 1 leaves only safe activity") {
    Rng rng(1);
    for (int i = 0; i < 1000; ++i) {
      const auto day = step_events(rng, scenario.areas[0], {1.0});
      CHECK(day.counts.incidents == 0);
      CHECK(day.counts.unsafe == 0);
      CHECK(day.incidents.empty());
    }
  }

  SUBCASE("incidents are consistent and phl >= ahl") {
    Rng rng(2);
    for (const auto& area : scenario.areas) {
      for (int i = 0; i < 20'000; ++i) {
        const auto day = step_events(rng, area, {0.0});
        REQUIRE(day.incidents.size() == day.counts.incidents);
        for (const auto& inc : day.incidents) {
          REQUIRE(inc.ahl >= 0);
          REQUIRE(inc.phl <= 5);
          REQUIRE(inc.phl >= inc.ahl);
          REQUIRE(area.hl_probs[static_cast<std::size_t>(inc.ahl)] > 0.0);
        }
      }
    }
  }

  SUBCASE("ensemble mean of incidents at fixed theta") {
    const SafetyAreaConfig area{"X", 40.0, 0.8, 0.5, 0.9, 0.25,
                                {0.5, 0.5, 0, 0, 0, 0}};
    const double expected = 0.5 * xi_of_theta(0.25, 0.8) * 40.0;  // 12
    Rng rng(3);
    double sum = 0.0;
    constexpr int kSteps = 100'000;
    for (int i = 0; i < kSteps; ++i) {
      sum += static_cast<double>(step_events(rng, area, {0.25}).counts.incidents);
    }
    CHECK(sum / kSteps == Approx(expected).epsilon(0.01));
  }

  SUBCASE("fixed seed is bit-reproducible") {
    Rng a(77), b(77);
    for (int i = 0; i < 500; ++i) {
      CHECK(step_events(a, scenario.areas[5], {0.1}) ==
            step_events(b, scenario.areas[5], {0.1}));
    }
  }
}
