#include "placer/dp_scaled.hpp"

#include <stdexcept>

namespace placer {

ScaledInstance scale_instance(const Instance& instance,
                              const Rational& epsilon) {
  throw_if_invalid(instance);
  if (epsilon <= Rational(0)) {
    throw std::invalid_argument("epsilon must be positive");
  }
  const int n = instance.num_objects();
  const Rational l_max = instance.max_length();

  ScaledInstance scaled;
  scaled.epsilon = epsilon;
  scaled.alpha = epsilon * l_max / Rational(n);
  scaled.source = &instance;
  for (const auto& o : instance.objects) {
    scaled.lengths.push_back((o.length / scaled.alpha).floor());
  }
  const Rational cap_bound = Rational(n) * l_max;
  for (const auto& c : instance.clients) {
    scaled.capacities.push_back(
        (placer::min(c.capacity, cap_bound) / scaled.alpha).floor());
  }
  return scaled;
}

DpResult solve_dp_nu(const Instance& instance, const Rational& epsilon,
                     const DpOptions& options) {
  ScaledInstance scaled = scale_instance(instance, epsilon);
  DpResult result =
      solve_dp_units(instance, scaled.lengths, scaled.capacities, options);
  if (result.status == SolveStatus::kInfeasible) {
    result.status = SolveStatus::kCertifiedInfeasible;
    return result;
  }
  BlowupReport blowup = verify_blowup(instance, epsilon, result.solution);
  if (!blowup.within_bound) {
    throw std::logic_error(
        "scaled solve exceeded the epsilon*l_max capacity allowance; "
        "this indicates a solver bug");
  }
  return result;
}

BlowupReport verify_blowup(const Instance& instance, const Rational& epsilon,
                           const Solution& solution) {
  Score score = score_solution(instance, solution.assignment);
  BlowupReport report;
  report.bound = epsilon * instance.max_length();
  report.within_bound = true;
  const double bound_d = report.bound.to_double();
  for (int j = 0; j < instance.num_clients(); ++j) {
    Rational slack = score.loads[j] - instance.clients[j].capacity;
    if (slack > report.bound && slack.to_double() > bound_d + 1e-9) {
      report.within_bound = false;
    }
    report.slacks.push_back(std::move(slack));
  }
  return report;
}

bool satisfies_scaled_capacities(const Instance& instance,
                                 const Rational& epsilon,
                                 std::span<const Configuration> assignment) {
  ScaledInstance scaled = scale_instance(instance, epsilon);
  const int m = instance.num_clients();
  const int n = instance.num_objects();
  if (static_cast<int>(assignment.size()) != n) {
    throw std::invalid_argument("assignment must cover every object");
  }
  for (int j = 0; j < m; ++j) {
    std::int64_t used = 0;
    for (int o = 0; o < n; ++o) {
      if (assignment[o].contains(j)) used += scaled.lengths[o];
    }
    if (used > scaled.capacities[j]) return false;
  }
  return true;
}

}  // namespace placer
