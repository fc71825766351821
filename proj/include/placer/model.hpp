#ifndef PLACER_MODEL_HPP
#define PLACER_MODEL_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "placer/rational.hpp"

namespace placer {

/// A client (machine) in the network: cache capacity in the same units
/// as object lengths, and an optional cap on the number of distinct
/// clients it may serve (page-placement only; absent means unbounded).
struct Client {
  Rational capacity;
  std::optional<int> client_limit;
};

/// One object: its length, and per-client access demands and
/// installation costs (both indexed by client, size M).
struct ObjectSpec {
  Rational length;
  std::vector<double> demands;
  std::vector<double> install_costs;
};

/// A placement problem instance. distances[i][j] is the distance a
/// request travels from client j to client i; the matrix need not be
/// symmetric and no triangle inequality is assumed. Diagonal entries
/// must be present and non-negative but are never consumed by the cost
/// function.
struct Instance {
  std::vector<Client> clients;
  std::vector<ObjectSpec> objects;
  std::vector<std::vector<double>> distances;

  int num_clients() const { return static_cast<int>(clients.size()); }
  int num_objects() const { return static_cast<int>(objects.size()); }

  Rational max_length() const;
  Rational total_length() const;
  /// The common length when all objects share one, otherwise nullopt.
  std::optional<Rational> uniform_length() const;
};

/// A non-empty subset of clients chosen to store a replica, encoded as
/// a bitmask (bit j set <=> client j stores the object).
class Configuration {
 public:
  constexpr Configuration() = default;
  constexpr explicit Configuration(std::uint32_t bits) : bits_(bits) {}
  static Configuration full(int num_clients) {
    return Configuration((std::uint32_t{1} << num_clients) - 1);
  }

  std::uint32_t bits() const { return bits_; }
  bool empty() const { return bits_ == 0; }
  int size() const { return __builtin_popcount(bits_); }
  bool contains(int client) const {
    return (bits_ >> client) & std::uint32_t{1};
  }
  std::vector<int> members() const;

  friend bool operator==(Configuration a, Configuration b) = default;
  friend auto operator<=>(Configuration a, Configuration b) = default;

 private:
  std::uint32_t bits_ = 0;
};

struct Violation {
  std::string where;
  std::string message;
};
using ValidationReport = std::vector<Violation>;

/// Structural validation of an instance: shapes, sign constraints,
/// every object demanded by at least one client, client limits within
/// [0, M-1]. Empty report means valid.
ValidationReport validate(const Instance& instance);

/// Throws std::invalid_argument listing the first violations, if any.
void throw_if_invalid(const Instance& instance);

/// True iff the combined cache capacity can hold one copy of every
/// object (sum of capacities >= sum of lengths). Necessary for the
/// placement problem to be feasible, but not sufficient: objects are
/// atomic and cannot be split across caches.
bool collective_capacity_feasible(const Instance& instance);

/// min over members j' of c of distances[j'][j]: the closest replica
/// distance for client j under configuration c. For j in c the value
/// includes the (unused) diagonal entry; the cost function masks it.
double nearest_distance(const Instance& instance, Configuration c, int j);

/// Total cost of storing object `o` on exactly the clients in `c`:
/// every non-member pays demand * length * nearest-replica distance,
/// every member pays its installation cost. Clients are summed in
/// ascending index order so results are reproducible bit for bit.
double config_cost(const Instance& instance, int o, Configuration c);

/// All non-empty configurations over `num_clients` clients in ascending
/// bitmask order, optionally restricted to at most `replica_cap`
/// members (the bounded-copies variant).
std::vector<Configuration> enumerate_configs(
    int num_clients, std::optional<int> replica_cap = std::nullopt);

/// A data-placement solution: one configuration per object.
struct Solution {
  std::vector<Configuration> assignment;
  double total_cost = 0.0;
  std::vector<Rational> loads;  // placed length per client, exact
};

struct Score {
  double total_cost = 0.0;
  std::vector<Rational> loads;
};

/// Recomputes cost and loads of an assignment from scratch (the
/// independent re-evaluation used by verification paths). Summation
/// order matches the solvers: objects in input order, clients
/// ascending. Throws on structurally invalid assignments.
Score score_solution(const Instance& instance,
                     std::span<const Configuration> assignment);

/// Indices of clients whose load exceeds capacity + slack.
std::vector<int> capacity_violations(const Instance& instance,
                                     std::span<const Rational> loads,
                                     const Rational& slack);

}  // namespace placer

#endif  // PLACER_MODEL_HPP
