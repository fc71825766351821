#ifndef PLACER_ORACLE_HPP
#define PLACER_ORACLE_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "placer/model.hpp"
#include "placer/page_placement.hpp"

namespace placer {

/// Caps on exhaustive enumeration. Exceeding either aborts with the
/// typed kBudgetExceeded outcome rather than running forever.
struct OracleBudget {
  std::uint64_t max_assignments = 100'000'000;
  double max_seconds = 60.0;
};

enum class OracleStatus {
  kOptimal,
  kInfeasible,
  kBudgetExceeded,
};

struct OracleDpResult {
  OracleStatus status = OracleStatus::kInfeasible;
  Solution solution;
  std::uint64_t assignments_checked = 0;
  double wall_seconds = 0.0;
};

/// Exact reference for the data placement problem: enumerates every
/// per-object configuration choice, filters by exact capacities, keeps
/// the first strict minimum. The enumeration order mirrors the dynamic
/// program's tie-break, so optimal assignments (not just costs) are
/// comparable. No pruning beyond the capacity filter.
OracleDpResult oracle_dp(
    const Instance& instance,
    std::optional<std::span<const int>> replica_caps = std::nullopt,
    const OracleBudget& budget = {});

struct OraclePpResult {
  OracleStatus status = OracleStatus::kInfeasible;
  PpSolution solution;
  std::uint64_t assignments_checked = 0;
  double wall_seconds = 0.0;
};

/// Exact reference for page placement: enumerates per-object
/// (configuration, pattern) pairs with global once-per-pair accounting
/// of first-time connections.
OraclePpResult oracle_pp(const Instance& instance,
                         const OracleBudget& budget = {});

struct FeasibleSamples {
  std::vector<std::vector<Configuration>> assignments;
  bool used_enumeration = false;  // rejection rate too low, enumerated instead
  bool infeasible = false;        // no feasible assignment exists
};

/// Uniformly sampled capacity-feasible assignments (rejection sampling
/// over random configuration choices), deterministic under `seed`.
/// Falls back to enumeration when rejection keeps missing.
FeasibleSamples sample_feasible_assignments(const Instance& instance,
                                            int count, std::uint64_t seed,
                                            const OracleBudget& budget = {});

}  // namespace placer

#endif  // PLACER_ORACLE_HPP
