#include "placer/oracle.hpp"

#include <doctest.h>

#include "placer/generators.hpp"
#include "test_util.hpp"

using namespace placer;
using test::make_instance;

TEST_CASE("single assignment instance") {
  Instance instance = make_instance({Rational(1)}, {Rational(1)}, {{2.0}},
                                    {{7.0}}, {{0.0}});
  OracleDpResult result = oracle_dp(instance);
  REQUIRE(result.status == OracleStatus::kOptimal);
  CHECK(result.solution.total_cost == 7.0);
  CHECK(result.assignments_checked == 1);
}

TEST_CASE("pigeonhole infeasibility") {
  Instance instance = make_instance(
      {Rational(1), Rational(1)}, {Rational(1), Rational(1), Rational(1)},
      {{1, 1}, {1, 1}, {1, 1}}, {{0, 0}, {0, 0}, {0, 0}}, {{0, 1}, {1, 0}});
  CHECK(oracle_dp(instance).status == OracleStatus::kInfeasible);
}

TEST_CASE("assignment budget is a typed outcome") {
  RandomFamilyParams params;
  params.clients = 3;
  params.objects = 8;  // 7^8 assignments
  Instance instance = gen_random(params);
  OracleBudget tiny;
  tiny.max_assignments = 1000;
  CHECK(oracle_dp(instance, std::nullopt, tiny).status ==
        OracleStatus::kBudgetExceeded);
  CHECK(oracle_pp(instance, tiny).status == OracleStatus::kBudgetExceeded);
}

TEST_CASE("fractional lengths enumerate exactly") {
  // loads 2/3 + 2/3 <= 4/3 exactly; any rounding would misjudge this
  Instance instance = make_instance(
      {Rational(4, 3), Rational(1)}, {Rational(2, 3), Rational(2, 3)},
      {{1, 0}, {1, 0}}, {{0, 0}, {0, 0}}, {{0, 5}, {5, 0}});
  OracleDpResult result = oracle_dp(instance);
  REQUIRE(result.status == OracleStatus::kOptimal);
  CHECK(result.solution.total_cost == 0.0);
  CHECK(result.solution.assignment[0].bits() == 0b01);
  CHECK(result.solution.assignment[1].bits() == 0b01);
}

TEST_CASE("restricted enumeration equals configuration-size filtering") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    RandomFamilyParams params;
    params.clients = 3;
    params.objects = 4;
    params.seed = seed;
    Instance instance = gen_random(params);
    std::vector<int> caps(4, 2);
    OracleDpResult capped = oracle_dp(instance, std::span<const int>(caps));
    OracleDpResult full = oracle_dp(instance);
    if (capped.status == OracleStatus::kOptimal) {
      for (const auto& c : capped.solution.assignment) CHECK(c.size() <= 2);
      REQUIRE(full.status == OracleStatus::kOptimal);
      CHECK(full.solution.total_cost <= capped.solution.total_cost);
    }
  }
}

TEST_CASE("cross-oracle: slack limits reduce page placement to placement") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    RandomFamilyParams params;
    params.clients = 3;
    params.objects = 3;
    params.seed = seed;
    Instance instance = gen_random(params);
    test::set_limits(instance, {2, 2, 2});
    OraclePpResult pp = oracle_pp(instance);
    OracleDpResult dp = oracle_dp(instance);
    REQUIRE((pp.status == OracleStatus::kOptimal) ==
            (dp.status == OracleStatus::kOptimal));
    if (pp.status == OracleStatus::kOptimal) {
      CHECK(pp.solution.total_cost == dp.solution.total_cost);
    }
  }
}

TEST_CASE("feasible sampling") {
  RandomFamilyParams params;
  params.clients = 3;
  params.objects = 4;
  params.seed = 11;
  Instance instance = gen_random(params);

  SUBCASE("samples pass the capacity check and are deterministic") {
    FeasibleSamples a = sample_feasible_assignments(instance, 20, 7);
    FeasibleSamples b = sample_feasible_assignments(instance, 20, 7);
    CHECK(a.assignments == b.assignments);
    CHECK(!a.infeasible);
    for (const auto& assignment : a.assignments) {
      Score score = score_solution(instance, assignment);
      CHECK(capacity_violations(instance, score.loads, Rational(0)).empty());
    }
  }
  SUBCASE("different seeds differ") {
    FeasibleSamples a = sample_feasible_assignments(instance, 20, 7);
    FeasibleSamples c = sample_feasible_assignments(instance, 20, 8);
    CHECK(a.assignments != c.assignments);
  }
}

TEST_CASE("sampling an infeasible instance yields the empty list and flag") {
  Instance instance = make_instance({Rational(1), Rational(1)}, {Rational(3)},
                                    {{1, 1}}, {{0, 0}}, {{0, 1}, {1, 0}});
  FeasibleSamples samples = sample_feasible_assignments(instance, 5, 3);
  CHECK(samples.assignments.empty());
  CHECK(samples.used_enumeration);
  CHECK(samples.infeasible);
}

TEST_CASE("sampling falls back to enumeration on a single-assignment space") {
  // only one feasible assignment: everything on client 0
  Instance instance = make_instance(
      {Rational(2), Rational(0)}, {Rational(1), Rational(1)},
      {{1, 0}, {1, 0}}, {{0, 0}, {0, 0}}, {{0, 1}, {1, 0}});
  FeasibleSamples samples = sample_feasible_assignments(instance, 3, 1);
  REQUIRE(samples.assignments.size() >= 1);
  for (const auto& assignment : samples.assignments) {
    CHECK(assignment[0].bits() == 0b01);
    CHECK(assignment[1].bits() == 0b01);
  }
}
