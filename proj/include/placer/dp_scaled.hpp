#ifndef PLACER_DP_SCALED_HPP
#define PLACER_DP_SCALED_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "placer/dp_uniform.hpp"
#include "placer/model.hpp"
#include "placer/rational.hpp"

namespace placer {

/// The integer program obtained by scaling lengths and capacities by
/// alpha = epsilon * l_max / N and flooring. Costs are NOT scaled: the
/// solver keeps evaluating configurations at the original lengths.
struct ScaledInstance {
  Rational alpha;
  Rational epsilon;
  std::vector<std::int64_t> lengths;     // floor(l_o / alpha)
  std::vector<std::int64_t> capacities;  // floor(min(C_j, N*l_max) / alpha)
  const Instance* source = nullptr;
};

/// Builds the scaled program. Capacities are first capped at N * l_max
/// (a client never benefits from room beyond one copy of everything),
/// then floored against alpha. All arithmetic is exact rational, so the
/// floors are never off by one. epsilon must be positive; values above
/// 1 are accepted and simply give a coarser program.
ScaledInstance scale_instance(const Instance& instance,
                              const Rational& epsilon);

/// Solves the scaled program exactly and reports the assignment at
/// original costs and original lengths. Guarantees, for every client j:
///   loads[j] <= C_j + epsilon * l_max
/// and total cost no greater than any assignment that fits the original
/// capacities exactly. An infeasible scaled program certifies the
/// original program infeasible (status kCertifiedInfeasible).
DpResult solve_dp_nu(const Instance& instance, const Rational& epsilon,
                     const DpOptions& options = {});

struct BlowupReport {
  std::vector<Rational> slacks;  // loads[j] - C_j, exact
  Rational bound;                // epsilon * l_max
  bool within_bound = false;     // every slack <= bound (+1e-9 as doubles)
};

/// Recomputes loads for a solution and reports per-client slack against
/// the epsilon * l_max allowance.
BlowupReport verify_blowup(const Instance& instance, const Rational& epsilon,
                           const Solution& solution);

/// True iff the assignment satisfies the scaled capacities. Any
/// assignment that fits the original capacities does, which is what
/// makes the scaled optimum a lower bound; this check is the
/// falsification harness for that property. The converse direction is
/// deliberately not checked: a scaled-feasible assignment may or may
/// not fit the original capacities.
bool satisfies_scaled_capacities(const Instance& instance,
                                 const Rational& epsilon,
                                 std::span<const Configuration> assignment);

}  // namespace placer

#endif  // PLACER_DP_SCALED_HPP
