#include "placer/page_placement.hpp"

#include <bit>
#include <chrono>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "placer/dp_scaled.hpp"

namespace placer {

namespace {

constexpr double kUnreachable = std::numeric_limits<double>::infinity();

int row_count(std::uint64_t edges, int server) {
  return std::popcount((edges >> (server * kMaxPpClients)) & 0xFFull);
}

}  // namespace

std::vector<ConnectionPattern> enumerate_patterns(
    Configuration c, std::uint32_t demander_mask) {
  if (c.empty()) throw std::invalid_argument("empty configuration");
  std::vector<int> servers = c.members();
  std::vector<int> demanders;
  for (int j = 0; j < kMaxPpClients; ++j) {
    if ((demander_mask >> j) & 1u) demanders.push_back(j);
  }
  std::vector<ConnectionPattern> out;
  std::vector<std::size_t> digit(demanders.size(), 0);
  while (true) {
    ConnectionPattern pattern;
    for (std::size_t d = 0; d < demanders.size(); ++d) {
      pattern.assign(servers[digit[d]], demanders[d]);
    }
    out.push_back(pattern);
    // odometer, last demander fastest => lexicographic output order
    std::size_t d = demanders.size();
    while (d > 0) {
      --d;
      if (++digit[d] < servers.size()) break;
      digit[d] = 0;
      if (d == 0) return out;
    }
    if (demanders.empty()) return out;
  }
}

std::uint32_t demander_mask(const Instance& instance, int o, Configuration c) {
  std::uint32_t mask = 0;
  for (int j = 0; j < instance.num_clients(); ++j) {
    if (!c.contains(j) && instance.objects[o].demands[j] > 0.0) {
      mask |= std::uint32_t{1} << j;
    }
  }
  return mask;
}

std::array<int, kMaxPpClients> first_time_connections(
    const ConnectionPattern& pattern, HistoryPattern history) {
  std::array<int, kMaxPpClients> delta{};
  std::uint64_t fresh = pattern.edges & ~history.bits;
  for (int i = 0; i < kMaxPpClients; ++i) delta[i] = row_count(fresh, i);
  return delta;
}

HistoryPattern merge_history(HistoryPattern history,
                             const ConnectionPattern& pattern) {
  return HistoryPattern{history.bits | pattern.edges};
}

double pattern_cost(const Instance& instance, int o, Configuration c,
                    const ConnectionPattern& pattern) {
  if (c.empty()) throw std::invalid_argument("empty configuration");
  const ObjectSpec& obj = instance.objects[o];
  const double len = obj.length.to_double();
  const int m = instance.num_clients();
  double access = 0.0;
  for (int j = 0; j < m; ++j) {
    int server = pattern.server_of[j];
    if (server < 0) continue;
    access += obj.demands[j] * len * instance.distances[server][j];
  }
  double install = 0.0;
  for (int j = 0; j < m; ++j) {
    if (c.contains(j)) install += obj.install_costs[j];
  }
  return access + install;
}

std::vector<PpChoice> build_pp_choices(const Instance& instance, int o) {
  std::vector<PpChoice> out;
  for (Configuration c : enumerate_configs(instance.num_clients())) {
    for (const ConnectionPattern& pattern :
         enumerate_patterns(c, demander_mask(instance, o, c))) {
      out.push_back({c, pattern, pattern_cost(instance, o, c, pattern)});
    }
  }
  return out;
}

PpScore score_pp_solution(const Instance& instance,
                          std::span<const PpObjectChoice> assignment) {
  const int m = instance.num_clients();
  const int n = instance.num_objects();
  if (static_cast<int>(assignment.size()) != n) {
    throw std::invalid_argument("assignment must cover every object");
  }
  PpScore score;
  score.loads.assign(m, Rational(0));
  std::uint64_t served = 0;
  for (int o = 0; o < n; ++o) {
    const auto& [c, pattern] = assignment[o];
    if (c.empty() || (c.bits() >> m) != 0) {
      throw std::invalid_argument("invalid configuration for object " +
                                  std::to_string(o));
    }
    for (int j = 0; j < m; ++j) {
      int server = pattern.server_of[j];
      bool must_connect =
          !c.contains(j) && instance.objects[o].demands[j] > 0.0;
      if (must_connect) {
        if (server < 0 || !c.contains(server)) {
          throw std::invalid_argument(
              "demanding client " + std::to_string(j) + " of object " +
              std::to_string(o) + " lacks a valid server");
        }
      } else if (server >= 0) {
        throw std::invalid_argument(
            "client " + std::to_string(j) + " of object " + std::to_string(o) +
            " must not connect");
      }
    }
    score.total_cost += pattern_cost(instance, o, c, pattern);
    for (int j = 0; j < m; ++j) {
      if (c.contains(j)) score.loads[j] += instance.objects[o].length;
    }
    served |= pattern.edges;
  }
  score.serve_counts.resize(m);
  for (int i = 0; i < m; ++i) score.serve_counts[i] = row_count(served, i);
  return score;
}

namespace {

struct PpStateKey {
  std::int64_t cache_idx = 0;
  std::int64_t load_idx = 0;
  std::uint64_t history = 0;
  friend bool operator==(const PpStateKey&, const PpStateKey&) = default;
};

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

struct PpStateKeyHash {
  std::size_t operator()(const PpStateKey& k) const {
    std::uint64_t h = mix64(static_cast<std::uint64_t>(k.cache_idx));
    h = mix64(h ^ static_cast<std::uint64_t>(k.load_idx));
    h = mix64(h ^ k.history);
    return static_cast<std::size_t>(h);
  }
};

struct MemoEntry {
  double cost = kUnreachable;
  std::uint32_t choice = 0;
};

class PpSolver {
 public:
  PpSolver(const Instance& inst, std::span<const std::int64_t> lengths,
           std::span<const std::int64_t> capacities)
      : inst_(inst),
        lengths_(lengths.begin(), lengths.end()),
        m_(inst.num_clients()),
        n_(inst.num_objects()) {
    caps_.fill(0);
    limits_.fill(0);
    cache_stride_.fill(0);
    load_stride_.fill(0);
    __int128 cs = 1;
    std::int64_t ls = 1;
    for (int j = 0; j < m_; ++j) {
      caps_[j] = capacities[j];
      limits_[j] = std::min<int>(
          inst.clients[j].client_limit.value_or(m_ - 1), m_ - 1);
      cache_stride_[j] = static_cast<std::int64_t>(cs);
      load_stride_[j] = ls;
      cs *= caps_[j] + 1;
      ls *= limits_[j] + 1;
      if (cs > (static_cast<__int128>(1) << 62)) {
        throw std::invalid_argument(
            "capacity state space too large for page placement");
      }
    }
    for (int o = 0; o < n_; ++o) choices_.push_back(build_pp_choices(inst, o));
    memo_.resize(n_ + 1);
  }

  PpResult run() {
    const auto start = std::chrono::steady_clock::now();
    std::array<std::int64_t, kMaxPpClients> r = caps_;
    std::array<int, kMaxPpClients> t{};
    for (int j = 0; j < m_; ++j) t[j] = limits_[j];
    double best = eval(n_, r, t, 0);

    PpResult result;
    for (int k = 1; k <= n_; ++k) {
      result.stats.states_visited += memo_[k].size();
      result.stats.max_layer_states = std::max<std::uint64_t>(
          result.stats.max_layer_states, memo_[k].size());
    }
    if (best < kUnreachable) {
      result.status = SolveStatus::kOptimal;
      result.solution.assignment = backtrack(r, t);
      PpScore score = score_pp_solution(inst_, result.solution.assignment);
      result.solution.total_cost = score.total_cost;
      result.solution.loads = std::move(score.loads);
      result.solution.serve_counts = std::move(score.serve_counts);
    }
    result.stats.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    return result;
  }

 private:
  PpStateKey key_of(const std::array<std::int64_t, kMaxPpClients>& r,
                    const std::array<int, kMaxPpClients>& t,
                    std::uint64_t s) const {
    PpStateKey key;
    key.history = s;
    for (int j = 0; j < m_; ++j) {
      key.cache_idx += r[j] * cache_stride_[j];
      key.load_idx += t[j] * load_stride_[j];
    }
    return key;
  }

  // Feasibility of one choice in the given state; fills the successor.
  bool admissible(const PpChoice& choice, std::int64_t length,
                  const std::array<std::int64_t, kMaxPpClients>& r,
                  const std::array<int, kMaxPpClients>& t, std::uint64_t s,
                  std::array<std::int64_t, kMaxPpClients>& nr,
                  std::array<int, kMaxPpClients>& nt) const {
    nr = r;
    nt = t;
    const std::uint64_t fresh = choice.pattern.edges & ~s;
    for (int j = 0; j < m_; ++j) {
      if (choice.config.contains(j)) {
        if (r[j] < length) return false;
        nr[j] -= length;
      }
      int delta = row_count(fresh, j);
      if (delta > 0) {
        if (t[j] < delta) return false;
        nt[j] -= delta;
      }
    }
    return true;
  }

  double eval(int k, const std::array<std::int64_t, kMaxPpClients>& r,
              const std::array<int, kMaxPpClients>& t, std::uint64_t s) {
    if (k == 0) return 0.0;
    PpStateKey key = key_of(r, t, s);
    auto [it, inserted] = memo_[k].try_emplace(key);
    if (!inserted) return it->second.cost;

    const auto& object_choices = choices_[k - 1];
    const std::int64_t length = lengths_[k - 1];
    double best = kUnreachable;
    std::uint32_t best_choice = 0;
    std::array<std::int64_t, kMaxPpClients> nr;
    std::array<int, kMaxPpClients> nt;
    for (std::uint32_t idx = 0; idx < object_choices.size(); ++idx) {
      const PpChoice& choice = object_choices[idx];
      if (!admissible(choice, length, r, t, s, nr, nt)) continue;
      double sub = eval(k - 1, nr, nt, s | choice.pattern.edges);
      double cand = choice.cost + sub;
      if (cand < best) {
        best = cand;
        best_choice = idx;
      }
    }
    // Recursion only touches lower layers, so `it` stays valid.
    it->second.cost = best;
    it->second.choice = best_choice;
    return best;
  }

  std::vector<PpObjectChoice> backtrack(
      std::array<std::int64_t, kMaxPpClients> r,
      std::array<int, kMaxPpClients> t) const {
    std::vector<PpObjectChoice> assignment(n_);
    std::uint64_t s = 0;
    for (int k = n_; k >= 1; --k) {
      const MemoEntry& entry = memo_[k].at(key_of(r, t, s));
      const PpChoice& choice = choices_[k - 1][entry.choice];
      assignment[k - 1] = {choice.config, choice.pattern};
      const std::uint64_t fresh = choice.pattern.edges & ~s;
      for (int j = 0; j < m_; ++j) {
        if (choice.config.contains(j)) r[j] -= lengths_[k - 1];
        t[j] -= row_count(fresh, j);
      }
      s |= choice.pattern.edges;
    }
    return assignment;
  }

  const Instance& inst_;
  std::vector<std::int64_t> lengths_;
  int m_;
  int n_;
  std::array<std::int64_t, kMaxPpClients> caps_;
  std::array<int, kMaxPpClients> limits_;
  std::array<std::int64_t, kMaxPpClients> cache_stride_;
  std::array<std::int64_t, kMaxPpClients> load_stride_;
  std::vector<std::vector<PpChoice>> choices_;
  std::vector<std::unordered_map<PpStateKey, MemoEntry, PpStateKeyHash>> memo_;
};

}  // namespace

PpResult solve_pp_units(const Instance& cost_instance,
                        std::span<const std::int64_t> unit_lengths,
                        std::span<const std::int64_t> unit_capacities,
                        const PpOptions& options) {
  throw_if_invalid(cost_instance);
  const int m = cost_instance.num_clients();
  if (m > kMaxPpClients || m > options.max_clients) {
    throw std::invalid_argument(
        "page placement supports at most " +
        std::to_string(std::min(options.max_clients, kMaxPpClients)) +
        " clients (guard flag --max-clients, hard limit " +
        std::to_string(kMaxPpClients) + ")");
  }
  if (static_cast<int>(unit_lengths.size()) != cost_instance.num_objects() ||
      static_cast<int>(unit_capacities.size()) != m) {
    throw std::invalid_argument("packing units do not match the instance");
  }
  for (std::int64_t l : unit_lengths) {
    if (l < 0) throw std::invalid_argument("unit lengths must be non-negative");
  }
  for (std::int64_t c : unit_capacities) {
    if (c < 0) throw std::invalid_argument("unit capacities must be non-negative");
  }
  PpSolver solver(cost_instance, unit_lengths, unit_capacities);
  return solver.run();
}

PpResult solve_pp(const Instance& instance, const PpOptions& options) {
  PackingUnits units = integer_units(instance);
  return solve_pp_units(instance, units.lengths, units.capacities, options);
}

PpResult solve_pp_nu(const Instance& instance, const Rational& epsilon,
                     const PpOptions& options) {
  ScaledInstance scaled = scale_instance(instance, epsilon);
  PpResult result =
      solve_pp_units(instance, scaled.lengths, scaled.capacities, options);
  if (result.status == SolveStatus::kInfeasible) {
    result.status = SolveStatus::kCertifiedInfeasible;
    return result;
  }
  const Rational bound = epsilon * instance.max_length();
  for (int j = 0; j < instance.num_clients(); ++j) {
    Rational slack = result.solution.loads[j] - instance.clients[j].capacity;
    if (slack > bound && slack.to_double() > bound.to_double() + 1e-9) {
      throw std::logic_error(
          "scaled page placement exceeded the epsilon*l_max allowance; "
          "this indicates a solver bug");
    }
  }
  return result;
}

}  // namespace placer
