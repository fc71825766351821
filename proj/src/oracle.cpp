#include "placer/oracle.hpp"

#include <bit>
#include <chrono>
#include <numeric>
#include <random>
#include <stdexcept>

#include "placer/dp_uniform.hpp"

namespace placer {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Exact integer packing units for arbitrary rational lengths: rescale
// by the least common multiple of the length denominators. Capacities
// floor exactly (loads are integers in the common unit).
PackingUnits common_units(const Instance& instance) {
  __int128 lcm = 1;
  for (const auto& o : instance.objects) {
    std::int64_t den = o.length.denominator();
    std::int64_t g = std::gcd(static_cast<std::int64_t>(lcm % den), den);
    lcm = lcm / g * den;
    if (lcm > (static_cast<__int128>(1) << 62)) {
      throw std::invalid_argument("object lengths too irregular to enumerate");
    }
  }
  const auto unit = Rational(1, static_cast<std::int64_t>(lcm));
  PackingUnits units;
  __int128 total = 0;
  for (const auto& o : instance.objects) {
    Rational scaled = o.length / unit;
    units.lengths.push_back(scaled.numerator());  // denominator is 1
    total += scaled.numerator();
    if (total > (static_cast<__int128>(1) << 62)) {
      throw std::invalid_argument("object lengths too large to enumerate");
    }
  }
  for (const auto& c : instance.clients) {
    units.capacities.push_back((c.capacity / unit).floor());
  }
  return units;
}

bool within_assignment_budget(std::span<const std::size_t> choice_counts,
                              std::uint64_t max_assignments) {
  __int128 total = 1;
  for (std::size_t k : choice_counts) {
    total *= static_cast<__int128>(k);
    if (total > static_cast<__int128>(max_assignments)) return false;
  }
  return true;
}

std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t k) {
  return rng() % k;
}

}  // namespace

OracleDpResult oracle_dp(const Instance& instance,
                         std::optional<std::span<const int>> replica_caps,
                         const OracleBudget& budget) {
  throw_if_invalid(instance);
  const auto start = Clock::now();
  const int m = instance.num_clients();
  const int n = instance.num_objects();
  PackingUnits units = common_units(instance);

  std::vector<std::vector<Configuration>> configs(n);
  std::vector<std::vector<double>> costs(n);
  for (int o = 0; o < n; ++o) {
    std::optional<int> cap;
    if (replica_caps) cap = (*replica_caps)[o];
    configs[o] = enumerate_configs(m, cap);
    for (Configuration c : configs[o]) {
      costs[o].push_back(config_cost(instance, o, c));
    }
  }

  OracleDpResult result;
  std::vector<std::size_t> counts(n);
  for (int o = 0; o < n; ++o) counts[o] = configs[o].size();
  if (!within_assignment_budget(counts, budget.max_assignments)) {
    result.status = OracleStatus::kBudgetExceeded;
    return result;
  }

  std::vector<std::size_t> digit(n, 0);
  std::vector<std::int64_t> loads(m, 0);
  for (int o = 0; o < n; ++o) {
    for (int j = 0; j < m; ++j) {
      if (configs[o][0].contains(j)) loads[j] += units.lengths[o];
    }
  }

  double best = 0.0;
  bool found = false;
  std::vector<std::size_t> best_digit;
  while (true) {
    ++result.assignments_checked;
    bool feasible = true;
    for (int j = 0; j < m; ++j) {
      if (loads[j] > units.capacities[j]) {
        feasible = false;
        break;
      }
    }
    if (feasible) {
      double total = 0.0;
      for (int o = 0; o < n; ++o) total += costs[o][digit[o]];
      if (!found || total < best) {
        found = true;
        best = total;
        best_digit = digit;
      }
    }
    if ((result.assignments_checked & 0xFFFF) == 0 &&
        seconds_since(start) > budget.max_seconds) {
      result.status = OracleStatus::kBudgetExceeded;
      return result;
    }
    // odometer: object 0 fastest, so assignments ascend in the same
    // lexicographic order the dynamic program's backtrack produces
    int o = 0;
    for (; o < n; ++o) {
      Configuration old = configs[o][digit[o]];
      digit[o] = (digit[o] + 1) % counts[o];
      Configuration fresh = configs[o][digit[o]];
      for (int j = 0; j < m; ++j) {
        if (old.contains(j)) loads[j] -= units.lengths[o];
        if (fresh.contains(j)) loads[j] += units.lengths[o];
      }
      if (digit[o] != 0) break;
    }
    if (o == n) break;
  }

  if (found) {
    result.status = OracleStatus::kOptimal;
    std::vector<Configuration> assignment(n);
    for (int o = 0; o < n; ++o) assignment[o] = configs[o][best_digit[o]];
    Score score = score_solution(instance, assignment);
    result.solution.assignment = std::move(assignment);
    result.solution.total_cost = score.total_cost;
    result.solution.loads = std::move(score.loads);
  }
  result.wall_seconds = seconds_since(start);
  return result;
}

OraclePpResult oracle_pp(const Instance& instance,
                         const OracleBudget& budget) {
  throw_if_invalid(instance);
  const auto start = Clock::now();
  const int m = instance.num_clients();
  const int n = instance.num_objects();
  if (m > kMaxPpClients) {
    throw std::invalid_argument("page placement supports at most 8 clients");
  }
  PackingUnits units = common_units(instance);
  std::vector<int> limits(m);
  for (int j = 0; j < m; ++j) {
    limits[j] =
        std::min<int>(instance.clients[j].client_limit.value_or(m - 1), m - 1);
  }

  std::vector<std::vector<PpChoice>> choices(n);
  std::vector<std::size_t> counts(n);
  for (int o = 0; o < n; ++o) {
    choices[o] = build_pp_choices(instance, o);
    counts[o] = choices[o].size();
  }

  OraclePpResult result;
  if (!within_assignment_budget(counts, budget.max_assignments)) {
    result.status = OracleStatus::kBudgetExceeded;
    return result;
  }

  std::vector<std::size_t> digit(n, 0);
  std::vector<std::int64_t> loads(m, 0);
  for (int o = 0; o < n; ++o) {
    for (int j = 0; j < m; ++j) {
      if (choices[o][0].config.contains(j)) loads[j] += units.lengths[o];
    }
  }

  double best = 0.0;
  bool found = false;
  std::vector<std::size_t> best_digit;
  while (true) {
    ++result.assignments_checked;
    bool feasible = true;
    for (int j = 0; j < m; ++j) {
      if (loads[j] > units.capacities[j]) {
        feasible = false;
        break;
      }
    }
    if (feasible) {
      std::uint64_t served = 0;
      for (int o = 0; o < n; ++o) served |= choices[o][digit[o]].pattern.edges;
      for (int i = 0; i < m && feasible; ++i) {
        int count = std::popcount((served >> (i * kMaxPpClients)) & 0xFFull);
        if (count > limits[i]) feasible = false;
      }
    }
    if (feasible) {
      double total = 0.0;
      for (int o = 0; o < n; ++o) total += choices[o][digit[o]].cost;
      if (!found || total < best) {
        found = true;
        best = total;
        best_digit = digit;
      }
    }
    if ((result.assignments_checked & 0xFFFF) == 0 &&
        seconds_since(start) > budget.max_seconds) {
      result.status = OracleStatus::kBudgetExceeded;
      return result;
    }
    int o = 0;
    for (; o < n; ++o) {
      Configuration old = choices[o][digit[o]].config;
      digit[o] = (digit[o] + 1) % counts[o];
      Configuration fresh = choices[o][digit[o]].config;
      for (int j = 0; j < m; ++j) {
        if (old.contains(j)) loads[j] -= units.lengths[o];
        if (fresh.contains(j)) loads[j] += units.lengths[o];
      }
      if (digit[o] != 0) break;
    }
    if (o == n) break;
  }

  if (found) {
    result.status = OracleStatus::kOptimal;
    std::vector<PpObjectChoice> assignment(n);
    for (int o = 0; o < n; ++o) {
      const PpChoice& c = choices[o][best_digit[o]];
      assignment[o] = {c.config, c.pattern};
    }
    PpScore score = score_pp_solution(instance, assignment);
    result.solution.assignment = std::move(assignment);
    result.solution.total_cost = score.total_cost;
    result.solution.loads = std::move(score.loads);
    result.solution.serve_counts = std::move(score.serve_counts);
  }
  result.wall_seconds = seconds_since(start);
  return result;
}

FeasibleSamples sample_feasible_assignments(const Instance& instance,
                                            int count, std::uint64_t seed,
                                            const OracleBudget& budget) {
  throw_if_invalid(instance);
  if (count < 0) throw std::invalid_argument("sample count must be non-negative");
  const int m = instance.num_clients();
  const int n = instance.num_objects();
  PackingUnits units = common_units(instance);
  std::vector<Configuration> configs = enumerate_configs(m);

  auto feasible = [&](const std::vector<Configuration>& assignment) {
    for (int j = 0; j < m; ++j) {
      std::int64_t load = 0;
      for (int o = 0; o < n; ++o) {
        if (assignment[o].contains(j)) load += units.lengths[o];
      }
      if (load > units.capacities[j]) return false;
    }
    return true;
  };

  FeasibleSamples samples;
  std::mt19937_64 rng(seed);
  const std::uint64_t trials = std::max<std::uint64_t>(
      10'000, static_cast<std::uint64_t>(count) * 200);
  for (std::uint64_t trial = 0;
       trial < trials && static_cast<int>(samples.assignments.size()) < count;
       ++trial) {
    std::vector<Configuration> assignment(n);
    for (int o = 0; o < n; ++o) {
      assignment[o] = configs[bounded(rng, configs.size())];
    }
    if (feasible(assignment)) samples.assignments.push_back(std::move(assignment));
  }
  if (static_cast<int>(samples.assignments.size()) >= count) return samples;

  // Rejection keeps missing: enumerate instead, keeping the first
  // `count` feasible assignments in enumeration order.
  samples.used_enumeration = true;
  samples.assignments.clear();
  std::vector<std::size_t> counts(n, configs.size());
  if (!within_assignment_budget(counts, budget.max_assignments)) {
    throw std::invalid_argument("assignment space exceeds the oracle budget");
  }
  std::vector<std::size_t> digit(n, 0);
  bool any = false;
  while (true) {
    std::vector<Configuration> assignment(n);
    for (int o = 0; o < n; ++o) assignment[o] = configs[digit[o]];
    if (feasible(assignment)) {
      any = true;
      if (static_cast<int>(samples.assignments.size()) < count) {
        samples.assignments.push_back(std::move(assignment));
      } else {
        break;
      }
    }
    int o = 0;
    for (; o < n; ++o) {
      digit[o] = (digit[o] + 1) % configs.size();
      if (digit[o] != 0) break;
    }
    if (o == n) break;
  }
  samples.infeasible = !any;
  return samples;
}

}  // namespace placer
