#include <numeric>

#include "doctest.h"
#include "safetysim/policies.hpp"
#include "test_support.hpp"

using namespace safetysim;
using doctest::Approx;

namespace {

// History of `days` days with the given incidents recorded on the last one.
ObservableHistory history_with(std::size_t n_areas,
                               std::vector<RecordedIncident> last_day,
                               std::size_t days = 1) {
  ObservableHistory h(n_areas, 3);
  for (std::size_t d = 1; d < days; ++d) h.append({DayObservations(3, n_areas), {}});
  h.append({DayObservations(3, n_areas), std::move(last_day)});
  return h;
}

RecordedIncident at(std::size_t area, HurtLevel ahl) {
  return {area, {ahl, ahl}};
}

void check_shares(const PolicyDecision& d, const std::vector<double>& expected) {
  REQUIRE(d.per_type.size() == 3);
  for (const auto& s : d.per_type) {
    REQUIRE(s.shares.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
      CHECK(s.shares[i] == Approx(expected[i]).epsilon(1e-12));
    }
    CHECK_NOTHROW(s.validate());
  }
}

}  // namespace

TEST_CASE("policy_uniform_random") {
  check_shares(policy_uniform_random(ObservableHistory(7, 3)),
               std::vector<double>(7, 1.0 / 7.0));
  check_shares(policy_uniform_random(ObservableHistory(1, 3)), {1.0});
  CHECK(policy_uniform_random(history_with(7, {at(0, 5), at(3, 2)})) ==
        policy_uniform_random(ObservableHistory(7, 3)));
}

TEST_CASE("policy_incident_count") {
  SUBCASE("proportional to counts") {
    const auto h = history_with(7, {at(0, 0), at(0, 1), at(0, 3), at(1, 0)});
    check_shares(policy_incident_count(h), {0.75, 0.25, 0, 0, 0, 0, 0});
  }
  SUBCASE("no incidents falls back to uniform") {
    check_shares(policy_incident_count(history_with(7, {}, 10)),
                 std::vector<double>(7, 1.0 / 7.0));
    check_shares(policy_incident_count(ObservableHistory(7, 3)),
                 std::vector<double>(7, 1.0 / 7.0));
  }
  SUBCASE("all incidents in one area") {
    check_shares(policy_incident_count(history_with(4, {at(2, 0), at(2, 4)})),
                 {0, 0, 1, 0});
  }
  SUBCASE("incidents older than the window are ignored") {
    ObservableHistory h(2, 3);
    h.append({DayObservations(3, 2), {at(0, 1)}});
    for (int d = 0; d < 30; ++d) h.append({DayObservations(3, 2), {}});
    h.append({DayObservations(3, 2), {at(1, 1)}});
    check_shares(policy_incident_count(h), {0.0, 1.0});
    // Day 1 is back in a 32-day window.
    check_shares(policy_incident_count(h, 32), {0.5, 0.5});
  }
}

TEST_CASE("policy_incident_severity") {
  SUBCASE("h = [3,0,...]") {
    const auto h = history_with(7, {at(0, 3), at(0, 1)});
    std::vector<double> expected(7, 1.0 / 14.0);
    expected[0] = 8.0 / 14.0;
    check_shares(policy_incident_severity(h), expected);
  }
  SUBCASE("h = [5,0,...]") {
    const auto h = history_with(7, {at(0, 5)});
    std::vector<double> expected(7, 1.0 / 38.0);
    expected[0] = 32.0 / 38.0;
    check_shares(policy_incident_severity(h), expected);
  }
  SUBCASE("equal highest severities give uniform shares") {
    const auto h = history_with(3, {at(0, 2), at(1, 2), at(2, 2), at(2, 0)});
    check_shares(policy_incident_severity(h), {1.0 / 3, 1.0 / 3, 1.0 / 3});
  }
  SUBCASE("near-misses count as incidents with h = 0") {
    check_shares(policy_incident_severity(history_with(2, {at(0, 0)})), {0.5, 0.5});
  }
}

TEST_CASE("policy_fixed_weights") {
  const FixedWeightsPolicy weighted(testing::kCaseStudyWeights);
  Rng rng(1);
  const auto d = weighted.decide(ObservableHistory(7, 3), rng);
  check_shares(d, testing::kCaseStudyWeights);
  CHECK(d.per_type[0].shares[5] == 0.28);

  CHECK_THROWS_AS(FixedWeightsPolicy({0.5, 0.4}), std::invalid_argument);
  CHECK_THROWS_AS(weighted.decide(ObservableHistory(3, 3), rng),
                  std::invalid_argument);
}

TEST_CASE("policy_none") {
  CHECK_FALSE(policy_none().observes());
  const NoObservationPolicy none;
  Rng rng(1);
  CHECK_FALSE(none.decide(history_with(7, {at(0, 5)}), rng).observes());
}

TEST_CASE("policy registry") {
  CHECK(make_policy("uniform")->name() == "uniform");
  CHECK(make_policy("counts")->name() == "counts");
  CHECK(make_policy("severity:10")->name() == "severity");
  CHECK(make_policy("none")->name() == "none");
  const auto w = make_policy("weighted:0.12,0.12,0.12,0.08,0.08,0.28,0.2");
  CHECK(w->name() == "weighted");

  try {
    make_policy("bandit");
    FAIL("expected UnknownPolicyError");
  } catch (const UnknownPolicyError& e) {
    const std::string msg = e.what();
    for (const char* name : {"uniform", "counts", "severity", "weighted", "none"}) {
      CHECK(msg.find(name) != std::string::npos);
    }
  }
  CHECK_THROWS_AS(make_policy("weighted:0.5,0.4"), std::invalid_argument);
  CHECK_THROWS_AS(make_policy("weighted:0.5,abc"), std::invalid_argument);
  CHECK_THROWS_AS(make_policy("counts:0"), std::invalid_argument);

  SUBCASE("custom policies register by name") {
    struct FirstArea final : Policy {
      std::string name() const override { return "first"; }
      PolicyDecision decide(const ObservableHistory& h, Rng&) const override {
        std::vector<double> s(h.area_count(), 0.0);
        s[0] = 1.0;
        return PolicyDecision::same_for_all(h.obs_type_count(), {s});
      }
    };
    PolicyRegistry registry;
    registry.add("first", [](std::string_view) { return std::make_unique<FirstArea>(); });
    CHECK(registry.make("first")->name() == "first");
  }
}

TEST_CASE("built-in policies are deterministic and sum to one") {
  std::mt19937_64 gen(5);
  std::uniform_int_distribution<std::size_t> area(0, 6);
  std::uniform_int_distribution<int> level(0, 5);
  std::uniform_int_distribution<int> n(0, 4);
  for (int trial = 0; trial < 200; ++trial) {
    ObservableHistory h(7, 3);
    for (int d = 0; d < 40; ++d) {
      std::vector<RecordedIncident> incidents;
      for (int k = n(gen); k > 0; --k) incidents.push_back(at(area(gen), level(gen)));
      h.append({DayObservations(3, 7), incidents});
    }
    for (const auto& d : {policy_incident_count(h), policy_incident_severity(h),
                          policy_uniform_random(h)}) {
      for (const auto& s : d.per_type) CHECK_NOTHROW(s.validate());
    }
    CHECK(policy_incident_count(h) == policy_incident_count(h));
    CHECK(policy_incident_severity(h) == policy_incident_severity(h));
  }
}
