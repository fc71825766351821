#include "placer/instance_io.hpp"

#include <doctest.h>

#include "placer/generators.hpp"
#include "test_util.hpp"

using namespace placer;

TEST_CASE("instance json round-trip is the identity") {
  Instance tight = gen_tightness(10, Rational(1, 2), Rational(1, 9));
  nlohmann::json doc = instance_to_json(tight);
  Instance back = instance_from_json(doc);
  CHECK(instance_to_json(back) == doc);
  CHECK(back.objects[0].length == Rational(4, 45));
  CHECK(back.clients[1].capacity == Rational(2));

  RandomFamilyParams params;
  params.with_limits = true;
  params.nonuniform_lengths = true;
  Instance random = gen_random(params);
  CHECK(instance_to_json(instance_from_json(instance_to_json(random))) ==
        instance_to_json(random));
}

TEST_CASE("numeric forms: integers, floats, exact strings, fractions") {
  nlohmann::json doc = nlohmann::json::parse(R"json({
    "version": 1,
    "clients": [{"capacity": 2}, {"capacity": "1.5", "client_limit": 1}],
    "objects": [
      {"length": "8/90", "demands": [1, "2.5"], "install_costs": [0, 0]},
      {"length": 1.5, "demands": [0, 1], "install_costs": ["0.25", 3]}
    ],
    "distances": [[0, 1], [2, 0]]
  })json");
  Instance instance = instance_from_json(doc);
  CHECK(instance.clients[0].capacity == Rational(2));
  CHECK(instance.clients[1].capacity == Rational(3, 2));
  CHECK(instance.clients[1].client_limit == 1);
  CHECK(instance.objects[0].length == Rational(4, 45));
  CHECK(instance.objects[0].demands[1] == 2.5);
  CHECK(instance.objects[1].length == Rational(3, 2));  // 1.5 is dyadic
  CHECK(instance.objects[1].install_costs[0] == 0.25);
  CHECK(validate(instance).empty());
}

TEST_CASE("instance hash ignores formatting, tracks content") {
  Instance a = gen_tightness(5, Rational(1, 2), Rational(1, 4));
  nlohmann::json doc = instance_to_json(a);
  Instance b = instance_from_json(nlohmann::json::parse(doc.dump(4)));
  CHECK(instance_hash(a) == instance_hash(b));

  Instance c = a;
  c.objects[0].demands[0] = 2.0;
  CHECK(instance_hash(a) != instance_hash(c));
}

TEST_CASE("malformed instances are rejected with context") {
  CHECK_THROWS_AS(instance_from_json(nlohmann::json::parse("[]")),
                  std::runtime_error);
  CHECK_THROWS_AS(
      instance_from_json(nlohmann::json::parse(R"({"version": 2})")),
      std::runtime_error);
  CHECK_THROWS_AS(instance_from_json(nlohmann::json::parse(
                      R"({"version": 1, "clients": [], "objects": [],
                          "distances": [], "extra": 1})")),
                  std::runtime_error);
}

TEST_CASE("report round-trip preserves every field") {
  SolveReport report;
  report.solver = "pp-nu";
  report.status = "optimal";
  report.hash = "0123456789abcdef";
  report.epsilon = Rational(1, 2);
  report.replica_caps = std::vector<int>{1, 2};
  report.assignment = {{{0, 1}, {}}, {{1}, {{0, 1}, {2, 1}}}};
  report.total_cost = 12.5;
  report.loads = {Rational(4, 5), Rational(14, 5)};
  report.slacks = {Rational(-1, 5), Rational(4, 5)};
  report.serve_counts = std::vector<int>{0, 2};
  report.wall_seconds = 0.125;
  report.states_visited = 1234;

  SolveReport back = report_from_json(report_to_json(report));
  CHECK(back.solver == report.solver);
  CHECK(back.status == report.status);
  CHECK(back.hash == report.hash);
  CHECK(back.epsilon == report.epsilon);
  CHECK(back.replica_caps == report.replica_caps);
  CHECK(back.total_cost == report.total_cost);
  CHECK(back.loads == report.loads);
  CHECK(back.slacks == report.slacks);
  CHECK(back.serve_counts == report.serve_counts);
  CHECK(back.states_visited == report.states_visited);
  REQUIRE(back.assignment.size() == 2);
  CHECK(back.assignment[1].clients == std::vector<int>{1});
  REQUIRE(back.assignment[1].servers.size() == 2);
  CHECK(report_to_json(back) == report_to_json(report));
}

TEST_CASE("assignments reconstruct from reports") {
  Instance instance = gen_tightness(5, Rational(1, 2), Rational(1, 4));
  SolveReport report;
  report.assignment = {{{0, 1}, {}}, {{0}, {}}, {{0}, {}}, {{0}, {}}, {{1}, {}}};
  auto assignment = assignment_from_report(instance, report);
  CHECK(assignment[0] == Configuration(0b11));
  CHECK(assignment[4] == Configuration(0b10));

  report.assignment[1].clients = {7};  // client outside the instance
  CHECK_THROWS_AS(assignment_from_report(instance, report),
                  std::runtime_error);
}
