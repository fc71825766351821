#ifndef PLACER_PAGE_PLACEMENT_HPP
#define PLACER_PAGE_PLACEMENT_HPP

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "placer/dp_uniform.hpp"
#include "placer/model.hpp"
#include "placer/rational.hpp"

namespace placer {

/// Page placement supports at most this many clients: connection and
/// history state is packed into 64-bit masks with an 8-bit row per
/// serving client.
inline constexpr int kMaxPpClients = 8;

/// Which replica serves each demanding client outside the
/// configuration. server_of[j] is the serving client for demander j, or
/// -1 for members and clients without demand (those never connect).
/// edges packs the same relation as bits server*8 + client.
struct ConnectionPattern {
  std::array<std::int8_t, kMaxPpClients> server_of;
  std::uint64_t edges = 0;

  ConnectionPattern() { server_of.fill(-1); }
  bool serves(int server, int client) const {
    return (edges >> (server * kMaxPpClients + client)) & std::uint64_t{1};
  }
  void assign(int server, int client) {
    server_of[client] = static_cast<std::int8_t>(server);
    edges |= std::uint64_t{1} << (server * kMaxPpClients + client);
  }
  friend bool operator==(const ConnectionPattern& a,
                         const ConnectionPattern& b) {
    return a.edges == b.edges;
  }
};

/// Directed record of which client has ever been served by which:
/// bit server*8 + client. Bits only ever turn on.
struct HistoryPattern {
  std::uint64_t bits = 0;
  bool used(int server, int client) const {
    return (bits >> (server * kMaxPpClients + client)) & std::uint64_t{1};
  }
  friend bool operator==(HistoryPattern a, HistoryPattern b) = default;
};

/// All ways the demanding non-members of `c` can pick a serving member,
/// as the full Cartesian product in lexicographic order (first demander
/// most significant, servers ascending). demander_mask bit j marks a
/// demanding client outside c.
std::vector<ConnectionPattern> enumerate_patterns(Configuration c,
                                                  std::uint32_t demander_mask);

/// Demanding clients of object `o` outside configuration `c`.
std::uint32_t demander_mask(const Instance& instance, int o, Configuration c);

/// Per-server count of clients connecting for the first time under
/// `pattern` given `history` (repeat connections are free).
std::array<int, kMaxPpClients> first_time_connections(
    const ConnectionPattern& pattern, HistoryPattern history);

/// history OR pattern: idempotent, monotone.
HistoryPattern merge_history(HistoryPattern history,
                             const ConnectionPattern& pattern);

/// Cost of placing object `o` on `c` with connections `pattern`: each
/// demander pays demand * length * distance to its chosen server (not
/// necessarily the nearest), members pay installation.
double pattern_cost(const Instance& instance, int o, Configuration c,
                    const ConnectionPattern& pattern);

/// One (configuration, pattern) alternative for an object, with its
/// cost precomputed. The list order (configurations ascending, patterns
/// lexicographic within each) is the canonical tie-break order shared
/// by the solver and the exhaustive reference.
struct PpChoice {
  Configuration config;
  ConnectionPattern pattern;
  double cost = 0.0;
};

std::vector<PpChoice> build_pp_choices(const Instance& instance, int o);

struct PpObjectChoice {
  Configuration config;
  ConnectionPattern pattern;
};

struct PpSolution {
  std::vector<PpObjectChoice> assignment;
  double total_cost = 0.0;
  std::vector<Rational> loads;
  std::vector<int> serve_counts;  // distinct clients served, per client
};

struct PpResult {
  SolveStatus status = SolveStatus::kInfeasible;
  PpSolution solution;
  SolveStats stats;
};

struct PpOptions {
  int max_clients = kMaxPpClients;
};

/// Recomputes cost, loads and distinct-serve counts of a page-placement
/// assignment from scratch; throws on structurally invalid patterns.
struct PpScore {
  double total_cost = 0.0;
  std::vector<Rational> loads;
  std::vector<int> serve_counts;
};
PpScore score_pp_solution(const Instance& instance,
                          std::span<const PpObjectChoice> assignment);

/// Exact page-placement solver for instances with integer lengths:
/// per-object configuration plus connection pattern, respecting cache
/// capacities and per-client serving limits (absent limit = M-1, the
/// maximum possible). First-time connections are charged once per
/// (server, client) pair across all objects.
PpResult solve_pp(const Instance& instance, const PpOptions& options = {});

PpResult solve_pp_units(const Instance& cost_instance,
                        std::span<const std::int64_t> unit_lengths,
                        std::span<const std::int64_t> unit_capacities,
                        const PpOptions& options = {});

/// Non-uniform lengths via the scaling transform: cache capacities may
/// overrun by at most epsilon * l_max, serving limits are respected
/// exactly. Scaled infeasibility certifies the original infeasible.
PpResult solve_pp_nu(const Instance& instance, const Rational& epsilon,
                     const PpOptions& options = {});

}  // namespace placer

#endif  // PLACER_PAGE_PLACEMENT_HPP
