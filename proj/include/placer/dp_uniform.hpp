#ifndef PLACER_DP_UNIFORM_HPP
#define PLACER_DP_UNIFORM_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "placer/model.hpp"

namespace placer {

enum class SolveStatus {
  kOptimal,
  kInfeasible,
  /// Infeasibility of the relaxed (scaled) program, which certifies the
  /// original program infeasible as well.
  kCertifiedInfeasible,
};

struct SolveStats {
  std::uint64_t states_visited = 0;  // (object layer, cache vector) pairs
  std::uint64_t max_layer_states = 0;
  bool dense_table = false;
  double wall_seconds = 0.0;
};

struct DpResult {
  SolveStatus status = SolveStatus::kInfeasible;
  Solution solution;  // meaningful only when status == kOptimal
  SolveStats stats;
};

struct DpOptions {
  /// Per-object replica caps (bounded-copies variant); empty = none.
  std::optional<std::vector<int>> replica_caps;
  /// Guard against exponential blow-up: solving is refused for more
  /// clients than this. Raise deliberately via --max-clients.
  int max_clients = 8;
  /// Dense per-layer tables are used while the product of (capacity+1)
  /// over clients stays at or below this; otherwise hash maps over the
  /// reachable states take over.
  std::size_t dense_table_budget = std::size_t{1} << 22;
};

/// Packing view of an instance: integer object lengths plus integer
/// cache capacities, both in the same unit.
struct PackingUnits {
  std::vector<std::int64_t> lengths;
  std::vector<std::int64_t> capacities;
};

/// Units for an instance whose lengths are all integers: lengths as-is,
/// capacities floored (exact: integer loads cannot use the fraction).
/// Throws if some length is non-integral.
PackingUnits integer_units(const Instance& instance);

/// Units for an instance whose lengths are all equal to some l > 0:
/// every length becomes 1 and capacities become floor(C_j / l), an
/// exact reduction. nullopt if lengths differ.
std::optional<PackingUnits> uniform_units(const Instance& instance);

/// Caps every capacity at the total object length: a client never
/// stores two copies of one object, so larger caches are equivalent.
/// Requires integer lengths; keeps the optimum and at least one optimal
/// assignment unchanged.
Instance normalize_capacities(Instance instance);

/// Exact solver for instances with integer lengths. Chooses one
/// configuration per object minimizing total cost subject to every
/// cache capacity exactly (no slack). Infeasible is a typed outcome.
/// Ties resolve to the first strict improvement in ascending-bitmask
/// configuration order, making the returned assignment canonical.
DpResult solve_dp(const Instance& instance, const DpOptions& options = {});

/// The same dynamic program with the packing units supplied explicitly.
/// Costs and reported loads always come from `cost_instance`; the
/// length-scaling solver passes scaled units here while keeping the
/// original cost function.
DpResult solve_dp_units(const Instance& cost_instance,
                        std::span<const std::int64_t> unit_lengths,
                        std::span<const std::int64_t> unit_capacities,
                        const DpOptions& options = {});

}  // namespace placer

#endif  // PLACER_DP_UNIFORM_HPP
