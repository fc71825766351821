#ifndef PLACER_INSTANCE_IO_HPP
#define PLACER_INSTANCE_IO_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "placer/model.hpp"
#include "placer/page_placement.hpp"
#include "placer/rational.hpp"

namespace placer {

/// Instance files are JSON documents:
///
///   {
///     "version": 1,
///     "clients": [{"capacity": "2", "client_limit": 1}, ...],
///     "objects": [{"length": "4/45", "demands": [...],
///                  "install_costs": [...]}, ...],
///     "distances": [[...], ...]
///   }
///
/// Lengths and capacities accept integers, exact decimal strings and
/// fraction strings ("8/90"); plain JSON floats are converted from
/// their exact binary value. Use strings when the scaling floors must
/// be bit-exact. Files embed no derived data: costs, loads and hashes
/// are always recomputed from these fields.
Instance instance_from_json(const nlohmann::json& doc);
nlohmann::json instance_to_json(const Instance& instance);

Instance load_instance(const std::string& path);
void save_instance(const std::string& path, const Instance& instance);

/// FNV-1a over the canonical serialization (sorted keys, canonical
/// rational strings): independent of formatting and key order in the
/// source file.
std::string instance_hash(const Instance& instance);

/// A machine-readable solve/oracle report. `servers` maps a demanding
/// client to the client that serves it (page placement only).
struct ReportAssignment {
  std::vector<int> clients;
  std::vector<std::pair<int, int>> servers;
};

struct SolveReport {
  std::string solver;  // dp | dp-nu | pp | pp-nu | oracle-dp | oracle-pp
  std::string status;  // optimal | infeasible | certified-infeasible | budget-exceeded
  std::string hash;
  std::optional<Rational> epsilon;
  std::optional<std::vector<int>> replica_caps;
  std::vector<ReportAssignment> assignment;
  double total_cost = 0.0;
  std::vector<Rational> loads;
  std::vector<Rational> slacks;  // load - capacity, per client
  std::optional<std::vector<int>> serve_counts;
  double wall_seconds = 0.0;
  std::uint64_t states_visited = 0;
};

nlohmann::json report_to_json(const SolveReport& report);
SolveReport report_from_json(const nlohmann::json& doc);
SolveReport load_report(const std::string& path);
void save_report(const std::string& path, const SolveReport& report);

/// Assignment conversions between report form and solver form.
std::vector<Configuration> assignment_from_report(const Instance& instance,
                                                  const SolveReport& report);
std::vector<PpObjectChoice> pp_assignment_from_report(
    const Instance& instance, const SolveReport& report);

/// Exact number parsing shared by the file formats.
Rational json_to_rational(const nlohmann::json& value);
double json_to_double(const nlohmann::json& value);

}  // namespace placer

#endif  // PLACER_INSTANCE_IO_HPP
