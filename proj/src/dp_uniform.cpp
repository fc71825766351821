#include "placer/dp_uniform.hpp"

#include <chrono>
#include <limits>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace placer {

namespace {

constexpr double kUnreachable = std::numeric_limits<double>::infinity();

struct ConfigChoice {
  std::uint32_t bits = 0;
  double cost = 0.0;
  std::vector<int> members;
  std::int64_t index_offset = 0;  // consumed length mapped into index space
};

struct ObjectPlan {
  std::int64_t length = 0;
  std::vector<ConfigChoice> choices;
  // Zero-length objects consume no capacity, so their best configuration
  // is state-independent and resolved once, before the table sweep.
  std::uint32_t shift_bits = 0;
  double shift_cost = 0.0;
};

struct TableShape {
  std::vector<std::int64_t> radix;    // capacity_j + 1
  std::vector<std::int64_t> strides;  // mixed-radix strides
  std::int64_t box = 0;               // product of radices
};

TableShape make_shape(std::span<const std::int64_t> capacities) {
  TableShape shape;
  const int m = static_cast<int>(capacities.size());
  shape.radix.resize(m);
  shape.strides.resize(m);
  __int128 box = 1;
  for (int j = 0; j < m; ++j) {
    shape.radix[j] = capacities[j] + 1;
    shape.strides[j] = static_cast<std::int64_t>(box);
    box *= shape.radix[j];
    if (box > (static_cast<__int128>(1) << 62)) {
      throw std::invalid_argument(
          "capacity state space too large; normalize capacities or use the "
          "epsilon mode");
    }
  }
  shape.box = static_cast<std::int64_t>(box);
  return shape;
}

void decode(const TableShape& shape, std::int64_t idx,
            std::vector<std::int64_t>& r) {
  for (std::size_t j = 0; j < shape.radix.size(); ++j) {
    r[j] = (idx / shape.strides[j]) % shape.radix[j];
  }
}

bool fits(const ConfigChoice& choice, const std::vector<std::int64_t>& r,
          std::int64_t length) {
  for (int j : choice.members) {
    if (r[j] < length) return false;
  }
  return true;
}

std::vector<ObjectPlan> build_plans(const Instance& cost_instance,
                                    std::span<const std::int64_t> lengths,
                                    const TableShape& shape,
                                    const DpOptions& options) {
  const int m = cost_instance.num_clients();
  const int n = cost_instance.num_objects();
  std::vector<ObjectPlan> plans(n);
  for (int o = 0; o < n; ++o) {
    std::optional<int> cap;
    if (options.replica_caps) cap = (*options.replica_caps)[o];
    ObjectPlan& plan = plans[o];
    plan.length = lengths[o];
    for (Configuration c : enumerate_configs(m, cap)) {
      ConfigChoice choice;
      choice.bits = c.bits();
      choice.cost = config_cost(cost_instance, o, c);
      choice.members = c.members();
      __int128 offset = 0;
      for (int j : choice.members) offset += shape.strides[j];
      offset *= plan.length;
      // offsets beyond the box belong to configurations that can never
      // fit; fits() rejects those before the offset is consumed
      choice.index_offset =
          offset < shape.box ? static_cast<std::int64_t>(offset) : shape.box;
      plan.choices.push_back(std::move(choice));
    }
    if (plan.length == 0) {
      double best = kUnreachable;
      for (const ConfigChoice& choice : plan.choices) {
        if (choice.cost < best) {
          best = choice.cost;
          plan.shift_bits = choice.bits;
        }
      }
      plan.shift_cost = best;
    }
  }
  return plans;
}

struct SweepResult {
  bool feasible = false;
  std::vector<Configuration> assignment;
};

// Dense sweep: every cache vector in the box, layer by layer, pulling
// from the previous layer. First strict improvement in ascending
// bitmask order wins, which keeps the backtracked assignment canonical.
SweepResult dense_sweep(const std::vector<ObjectPlan>& plans,
                        const TableShape& shape, SolveStats& stats) {
  const int n = static_cast<int>(plans.size());
  const auto box = static_cast<std::size_t>(shape.box);
  std::vector<double> prev(box, 0.0);  // f_0 is 0 everywhere
  std::vector<double> cur(box);
  std::vector<std::vector<std::uint32_t>> picks(n);
  std::vector<std::int64_t> r(shape.radix.size());

  for (int k = 0; k < n; ++k) {
    const ObjectPlan& plan = plans[k];
    stats.states_visited += box;
    stats.max_layer_states = std::max<std::uint64_t>(stats.max_layer_states, box);
    if (plan.length == 0) {
      for (std::size_t idx = 0; idx < box; ++idx) {
        cur[idx] = prev[idx] + plan.shift_cost;
      }
    } else {
      picks[k].assign(box, 0);
      for (std::size_t j = 0; j < r.size(); ++j) r[j] = 0;
      for (std::size_t idx = 0; idx < box; ++idx) {
        double best = kUnreachable;
        std::uint32_t best_bits = 0;
        for (const ConfigChoice& choice : plan.choices) {
          if (!fits(choice, r, plan.length)) continue;
          double cand =
              choice.cost + prev[idx - static_cast<std::size_t>(choice.index_offset)];
          if (cand < best) {
            best = cand;
            best_bits = choice.bits;
          }
        }
        cur[idx] = best;
        picks[k][idx] = best_bits;
        // odometer step for the decoded cache vector
        for (std::size_t j = 0; j < r.size(); ++j) {
          if (++r[j] < shape.radix[j]) break;
          r[j] = 0;
        }
      }
    }
    std::swap(prev, cur);
  }

  SweepResult result;
  std::int64_t top = shape.box - 1;  // full capacities
  if (prev[static_cast<std::size_t>(top)] == kUnreachable) return result;
  result.feasible = true;
  result.assignment.resize(n);
  std::int64_t idx = top;
  for (int k = n - 1; k >= 0; --k) {
    const ObjectPlan& plan = plans[k];
    if (plan.length == 0) {
      result.assignment[k] = Configuration(plan.shift_bits);
      continue;
    }
    std::uint32_t bits = picks[k][static_cast<std::size_t>(idx)];
    result.assignment[k] = Configuration(bits);
    for (const ConfigChoice& choice : plan.choices) {
      if (choice.bits == bits) {
        idx -= choice.index_offset;
        break;
      }
    }
  }
  return result;
}

// Sparse sweep over the states reachable from the full-capacity vector:
// a downward pass collects each layer's state set, an upward pass fills
// in values. Costs live in two layers; picks are kept per layer for the
// backtrack.
SweepResult sparse_sweep(const std::vector<ObjectPlan>& plans,
                         const TableShape& shape, SolveStats& stats) {
  const int n = static_cast<int>(plans.size());
  const std::int64_t top = shape.box - 1;
  std::vector<std::vector<std::int64_t>> layer_states(n + 1);
  layer_states[n] = {top};
  std::vector<std::int64_t> r(shape.radix.size());
  for (int k = n; k >= 1; --k) {
    const ObjectPlan& plan = plans[k - 1];
    if (plan.length == 0) {
      layer_states[k - 1] = layer_states[k];
      continue;
    }
    std::unordered_set<std::int64_t> next;
    for (std::int64_t idx : layer_states[k]) {
      decode(shape, idx, r);
      for (const ConfigChoice& choice : plan.choices) {
        if (!fits(choice, r, plan.length)) continue;
        next.insert(idx - choice.index_offset);
      }
    }
    layer_states[k - 1].assign(next.begin(), next.end());
  }

  std::unordered_map<std::int64_t, double> prev;
  std::unordered_map<std::int64_t, double> cur;
  for (std::int64_t idx : layer_states[0]) prev.emplace(idx, 0.0);
  std::vector<std::unordered_map<std::int64_t, std::uint32_t>> picks(n);
  for (int k = 1; k <= n; ++k) {
    const ObjectPlan& plan = plans[k - 1];
    stats.states_visited += layer_states[k].size();
    stats.max_layer_states =
        std::max<std::uint64_t>(stats.max_layer_states, layer_states[k].size());
    cur.clear();
    if (plan.length == 0) {
      for (std::int64_t idx : layer_states[k]) {
        cur.emplace(idx, prev.at(idx) + plan.shift_cost);
      }
    } else {
      for (std::int64_t idx : layer_states[k]) {
        decode(shape, idx, r);
        double best = kUnreachable;
        std::uint32_t best_bits = 0;
        for (const ConfigChoice& choice : plan.choices) {
          if (!fits(choice, r, plan.length)) continue;
          double cand = choice.cost + prev.at(idx - choice.index_offset);
          if (cand < best) {
            best = cand;
            best_bits = choice.bits;
          }
        }
        cur.emplace(idx, best);
        picks[k - 1].emplace(idx, best_bits);
      }
    }
    std::swap(prev, cur);
  }

  SweepResult result;
  auto it = prev.find(top);
  if (it == prev.end() || it->second == kUnreachable) return result;
  result.feasible = true;
  result.assignment.resize(n);
  std::int64_t idx = top;
  for (int k = n - 1; k >= 0; --k) {
    const ObjectPlan& plan = plans[k];
    if (plan.length == 0) {
      result.assignment[k] = Configuration(plan.shift_bits);
      continue;
    }
    std::uint32_t bits = picks[k].at(idx);
    result.assignment[k] = Configuration(bits);
    for (const ConfigChoice& choice : plan.choices) {
      if (choice.bits == bits) {
        idx -= choice.index_offset;
        break;
      }
    }
  }
  return result;
}

}  // namespace

PackingUnits integer_units(const Instance& instance) {
  PackingUnits units;
  for (const auto& o : instance.objects) {
    if (!o.length.is_integer()) {
      throw std::invalid_argument(
          "exact solve requires integer object lengths; use the epsilon mode "
          "for fractional lengths");
    }
    units.lengths.push_back(o.length.numerator());
  }
  for (const auto& c : instance.clients) {
    units.capacities.push_back(c.capacity.floor());
  }
  return units;
}

std::optional<PackingUnits> uniform_units(const Instance& instance) {
  std::optional<Rational> length = instance.uniform_length();
  if (!length || length->is_zero()) return std::nullopt;
  PackingUnits units;
  units.lengths.assign(instance.objects.size(), 1);
  for (const auto& c : instance.clients) {
    units.capacities.push_back((c.capacity / *length).floor());
  }
  return units;
}

Instance normalize_capacities(Instance instance) {
  for (const auto& o : instance.objects) {
    if (!o.length.is_integer()) {
      throw std::invalid_argument("capacity normalization requires integer lengths");
    }
  }
  const Rational total = instance.total_length();
  for (auto& client : instance.clients) {
    client.capacity = placer::min(client.capacity, total);
  }
  return instance;
}

DpResult solve_dp(const Instance& instance, const DpOptions& options) {
  PackingUnits units = integer_units(instance);
  return solve_dp_units(instance, units.lengths, units.capacities, options);
}

DpResult solve_dp_units(const Instance& cost_instance,
                        std::span<const std::int64_t> unit_lengths,
                        std::span<const std::int64_t> unit_capacities,
                        const DpOptions& options) {
  throw_if_invalid(cost_instance);
  const int m = cost_instance.num_clients();
  const int n = cost_instance.num_objects();
  if (m > options.max_clients) {
    throw std::invalid_argument(
        "instance has " + std::to_string(m) +
        " clients, above the solver guard of " +
        std::to_string(options.max_clients) +
        "; state counts grow exponentially in the client count, raise "
        "--max-clients deliberately");
  }
  if (static_cast<int>(unit_lengths.size()) != n ||
      static_cast<int>(unit_capacities.size()) != m) {
    throw std::invalid_argument("packing units do not match the instance");
  }
  for (std::int64_t l : unit_lengths) {
    if (l < 0) throw std::invalid_argument("unit lengths must be non-negative");
  }
  for (std::int64_t c : unit_capacities) {
    if (c < 0) throw std::invalid_argument("unit capacities must be non-negative");
  }
  if (options.replica_caps) {
    if (static_cast<int>(options.replica_caps->size()) != n) {
      throw std::invalid_argument("replica caps must have one entry per object");
    }
    for (int cap : *options.replica_caps) {
      if (cap < 1) throw std::invalid_argument("replica caps must be at least 1");
    }
  }

  const auto start = std::chrono::steady_clock::now();
  DpResult result;
  TableShape shape = make_shape(unit_capacities);
  std::vector<ObjectPlan> plans =
      build_plans(cost_instance, unit_lengths, shape, options);

  result.stats.dense_table =
      static_cast<std::size_t>(shape.box) <= options.dense_table_budget;
  SweepResult sweep = result.stats.dense_table
                          ? dense_sweep(plans, shape, result.stats)
                          : sparse_sweep(plans, shape, result.stats);

  if (sweep.feasible) {
    result.status = SolveStatus::kOptimal;
    Score score = score_solution(cost_instance, sweep.assignment);
    result.solution.assignment = std::move(sweep.assignment);
    result.solution.total_cost = score.total_cost;
    result.solution.loads = std::move(score.loads);
  } else {
    result.status = SolveStatus::kInfeasible;
  }
  result.stats.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return result;
}

}  // namespace placer
