#include "placer/dp_uniform.hpp"

#include <doctest.h>

#include <stdexcept>

#include "placer/generators.hpp"
#include "placer/oracle.hpp"
#include "test_util.hpp"

using namespace placer;
using test::make_instance;

namespace {

// Hand-solved: feasible assignments are ({0},{1}) at 14+8=22 and
// ({1},{0}) at 15+3=18. Optimum is 18.
Instance hand_instance() {
  return make_instance({Rational(1), Rational(1)}, {Rational(1), Rational(1)},
                       {{3.0, 5.0}, {2.0, 1.0}}, {{4.0, 6.0}, {1.0, 2.0}},
                       {{0.0, 2.0}, {3.0, 0.0}});
}

Instance random_unit(std::uint64_t seed, int clients = 3, int objects = 6) {
  RandomFamilyParams params;
  params.clients = clients;
  params.objects = objects;
  params.seed = seed;
  return gen_random(params);
}

}  // namespace

TEST_CASE("capacity normalization caps at the total length") {
  SUBCASE("unit lengths cap at N") {
    Instance instance = random_unit(1, 2, 5);
    instance.clients[0].capacity = Rational(100);
    instance.clients[1].capacity = Rational(3);
    Instance normalized = normalize_capacities(instance);
    CHECK(normalized.clients[0].capacity == Rational(5));
    CHECK(normalized.clients[1].capacity == Rational(3));
    // the optimum is untouched
    CHECK(solve_dp(normalized).solution.total_cost ==
          solve_dp(instance).solution.total_cost);
  }
  SUBCASE("general integer lengths cap at their sum") {
    Instance instance = make_instance({Rational(99)}, {Rational(2), Rational(3)},
                                      {{1.0}, {1.0}}, {{0.0}, {0.0}}, {{0.0}});
    CHECK(normalize_capacities(instance).clients[0].capacity == Rational(5));
  }
  SUBCASE("already small is idempotent") {
    Instance instance = random_unit(2);
    Instance once = normalize_capacities(instance);
    Instance twice = normalize_capacities(once);
    for (int j = 0; j < instance.num_clients(); ++j) {
      CHECK(once.clients[j].capacity == twice.clients[j].capacity);
    }
  }
  SUBCASE("fractional lengths are rejected") {
    Instance instance = make_instance({Rational(1)}, {Rational(1, 2)}, {{1.0}},
                                      {{0.0}}, {{0.0}});
    CHECK_THROWS_AS(normalize_capacities(instance), std::invalid_argument);
  }
}

TEST_CASE("solve finds the hand-computed optimum") {
  DpResult result = solve_dp(hand_instance());
  REQUIRE(result.status == SolveStatus::kOptimal);
  CHECK(result.solution.total_cost == 18.0);
  REQUIRE(result.solution.assignment.size() == 2);
  CHECK(result.solution.assignment[0].bits() == 0b10);
  CHECK(result.solution.assignment[1].bits() == 0b01);
  CHECK(result.solution.loads ==
        std::vector<Rational>{Rational(1), Rational(1)});
}

TEST_CASE("single client stores everything at zero install cost") {
  Instance instance = make_instance({Rational(2)}, {Rational(1), Rational(1)},
                                    {{1.0}, {2.0}}, {{0.0}, {0.0}}, {{0.0}});
  DpResult result = solve_dp(instance);
  REQUIRE(result.status == SolveStatus::kOptimal);
  CHECK(result.solution.total_cost == 0.0);
  CHECK(result.solution.assignment[0].bits() == 0b1);
  CHECK(result.solution.assignment[1].bits() == 0b1);
}

TEST_CASE("pigeonhole infeasibility is a typed outcome") {
  Instance instance = make_instance(
      {Rational(1), Rational(1)}, {Rational(1), Rational(1), Rational(1)},
      {{1, 1}, {1, 1}, {1, 1}}, {{0, 0}, {0, 0}, {0, 0}}, {{0, 1}, {1, 0}});
  CHECK(solve_dp(instance).status == SolveStatus::kInfeasible);
}

TEST_CASE("client-count guard") {
  RandomFamilyParams params;
  params.clients = 9;
  params.objects = 2;
  Instance instance = gen_random(params);
  CHECK_THROWS_AS(solve_dp(instance), std::invalid_argument);
  DpOptions raised;
  raised.max_clients = 9;
  CHECK(solve_dp(instance, raised).status == SolveStatus::kOptimal);
}

TEST_CASE("dense and sparse tables agree") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    Instance instance = random_unit(seed);
    DpOptions sparse;
    sparse.dense_table_budget = 0;
    DpResult dense_result = solve_dp(instance);
    DpResult sparse_result = solve_dp(instance, sparse);
    REQUIRE(dense_result.status == sparse_result.status);
    if (dense_result.status == SolveStatus::kOptimal) {
      CHECK(dense_result.solution.total_cost ==
            sparse_result.solution.total_cost);
      CHECK(dense_result.solution.assignment ==
            sparse_result.solution.assignment);
      CHECK(sparse_result.stats.states_visited <=
            dense_result.stats.states_visited);
    }
  }
}

TEST_CASE("solver total equals an independent re-score bit for bit") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    Instance instance = random_unit(seed);
    DpResult result = solve_dp(instance);
    if (result.status != SolveStatus::kOptimal) continue;
    Score score = score_solution(instance, result.solution.assignment);
    CHECK(score.total_cost == result.solution.total_cost);
    CHECK(score.loads == result.solution.loads);
  }
}

TEST_CASE("agrees with the exhaustive reference on small instances") {
  int solved = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Instance instance = random_unit(seed, 3, 5);
    DpResult dp = solve_dp(instance);
    OracleDpResult reference = oracle_dp(instance);
    if (reference.status == OracleStatus::kInfeasible) {
      CHECK(dp.status == SolveStatus::kInfeasible);
      continue;
    }
    REQUIRE(reference.status == OracleStatus::kOptimal);
    REQUIRE(dp.status == SolveStatus::kOptimal);
    CHECK(dp.solution.total_cost == reference.solution.total_cost);
    CHECK(dp.solution.assignment == reference.solution.assignment);
    ++solved;
  }
  CHECK(solved > 20);  // the family must not be degenerate
}

TEST_CASE("optimal cost is invariant under object permutation") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Instance instance = random_unit(seed);
    DpResult base = solve_dp(instance);
    Instance shuffled = test::permute_objects(
        instance, test::shuffled_indices(instance.num_objects(), seed + 99));
    DpResult permuted = solve_dp(shuffled);
    REQUIRE(base.status == permuted.status);
    if (base.status == SolveStatus::kOptimal) {
      CHECK(base.solution.total_cost == permuted.solution.total_cost);
    }
  }
}

TEST_CASE("optimal cost never rises when a capacity grows") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Instance instance = random_unit(seed);
    DpResult base = solve_dp(instance);
    if (base.status != SolveStatus::kOptimal) continue;
    for (int j = 0; j < instance.num_clients(); ++j) {
      Instance bigger = instance;
      bigger.clients[j].capacity += Rational(1);
      DpResult grown = solve_dp(bigger);
      REQUIRE(grown.status == SolveStatus::kOptimal);
      CHECK(grown.solution.total_cost <= base.solution.total_cost);
    }
  }
}

TEST_CASE("table values are componentwise monotone in capacity") {
  // f(r) viewed through solves over every sub-capacity vector
  Instance instance = random_unit(7, 2, 4);
  instance.clients[0].capacity = Rational(2);
  instance.clients[1].capacity = Rational(2);
  auto value = [&](int c0, int c1) {
    Instance sub = instance;
    sub.clients[0].capacity = Rational(c0);
    sub.clients[1].capacity = Rational(c1);
    DpResult result = solve_dp(sub);
    return result.status == SolveStatus::kOptimal
               ? result.solution.total_cost
               : std::numeric_limits<double>::infinity();
  };
  for (int c0 = 0; c0 <= 2; ++c0) {
    for (int c1 = 0; c1 <= 2; ++c1) {
      if (c0 > 0) CHECK(value(c0, c1) <= value(c0 - 1, c1));
      if (c1 > 0) CHECK(value(c0, c1) <= value(c0, c1 - 1));
    }
  }
}

TEST_CASE("replica caps") {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    Instance instance = random_unit(seed, 3, 4);
    const int n = instance.num_objects();

    DpOptions capped;
    capped.replica_caps = std::vector<int>(n, 1);
    DpResult dp = solve_dp(instance, capped);
    std::vector<int> caps(n, 1);
    OracleDpResult reference =
        oracle_dp(instance, std::span<const int>(caps));
    if (reference.status == OracleStatus::kInfeasible) {
      CHECK(dp.status == SolveStatus::kInfeasible);
    } else {
      REQUIRE(dp.status == SolveStatus::kOptimal);
      CHECK(dp.solution.total_cost == reference.solution.total_cost);
      CHECK(dp.solution.assignment == reference.solution.assignment);
    }

    // caps at M change nothing
    DpOptions slack;
    slack.replica_caps = std::vector<int>(n, instance.num_clients());
    DpResult uncapped = solve_dp(instance);
    DpResult with_slack_caps = solve_dp(instance, slack);
    REQUIRE(uncapped.status == with_slack_caps.status);
    if (uncapped.status == SolveStatus::kOptimal) {
      CHECK(uncapped.solution.total_cost ==
            with_slack_caps.solution.total_cost);
      CHECK(uncapped.solution.assignment == with_slack_caps.solution.assignment);
    }
  }
}

TEST_CASE("visited states respect the layer bound") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Instance instance = random_unit(seed);
    DpResult result = solve_dp(instance);
    std::uint64_t box = 1;
    for (const auto& c : instance.clients) {
      box *= static_cast<std::uint64_t>(c.capacity.floor()) + 1;
    }
    CHECK(result.stats.states_visited <=
          static_cast<std::uint64_t>(instance.num_objects()) * box);
  }
}

TEST_CASE("argmin is unchanged when distances scale uniformly") {
  RandomFamilyParams params;
  params.max_install = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    params.seed = seed;
    Instance instance = gen_random(params);
    Instance doubled = instance;
    for (auto& row : doubled.distances) {
      for (double& d : row) d *= 2.0;
    }
    DpResult base = solve_dp(instance);
    DpResult scaled = solve_dp(doubled);
    REQUIRE(base.status == scaled.status);
    if (base.status == SolveStatus::kOptimal) {
      CHECK(base.solution.assignment == scaled.solution.assignment);
      CHECK(scaled.solution.total_cost == 2.0 * base.solution.total_cost);
    }
  }
}
