#include "placer/model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace placer {

Rational Instance::max_length() const {
  Rational best;
  for (const auto& o : objects) best = placer::max(best, o.length);
  return best;
}

Rational Instance::total_length() const {
  Rational sum;
  for (const auto& o : objects) sum += o.length;
  return sum;
}

std::optional<Rational> Instance::uniform_length() const {
  if (objects.empty()) return std::nullopt;
  Rational first = objects.front().length;
  for (const auto& o : objects) {
    if (o.length != first) return std::nullopt;
  }
  return first;
}

std::vector<int> Configuration::members() const {
  std::vector<int> out;
  for (int j = 0; j < 32; ++j) {
    if (contains(j)) out.push_back(j);
  }
  return out;
}

namespace {

bool finite_non_negative(double v) { return std::isfinite(v) && v >= 0.0; }

std::string at(const std::string& field, int index) {
  return field + "[" + std::to_string(index) + "]";
}

}  // namespace

ValidationReport validate(const Instance& instance) {
  ValidationReport report;
  const int m = instance.num_clients();
  const int n = instance.num_objects();
  if (m < 1) report.push_back({"clients", "at least one client required"});
  if (n < 1) report.push_back({"objects", "at least one object required"});

  for (int j = 0; j < m; ++j) {
    const Client& c = instance.clients[j];
    if (c.capacity.is_negative()) {
      report.push_back({at("clients", j) + ".capacity",
                        "capacity must be non-negative"});
    }
    if (c.client_limit && (*c.client_limit < 0 || *c.client_limit > m - 1)) {
      report.push_back({at("clients", j) + ".client_limit",
                        "client limit must lie in [0, M-1]"});
    }
  }

  for (int o = 0; o < n; ++o) {
    const ObjectSpec& obj = instance.objects[o];
    if (obj.length <= Rational(0)) {
      report.push_back({at("objects", o) + ".length",
                        "length must be positive"});
    }
    if (static_cast<int>(obj.demands.size()) != m) {
      report.push_back({at("objects", o) + ".demands",
                        "must have one entry per client"});
      continue;
    }
    if (static_cast<int>(obj.install_costs.size()) != m) {
      report.push_back({at("objects", o) + ".install_costs",
                        "must have one entry per client"});
      continue;
    }
    bool demanded = false;
    for (int j = 0; j < m; ++j) {
      if (!finite_non_negative(obj.demands[j])) {
        report.push_back({at("objects", o) + ".demands",
                          "demands must be finite and non-negative"});
        break;
      }
      if (obj.demands[j] > 0.0) demanded = true;
    }
    for (int j = 0; j < m; ++j) {
      if (!finite_non_negative(obj.install_costs[j])) {
        report.push_back({at("objects", o) + ".install_costs",
                          "installation costs must be finite and non-negative"});
        break;
      }
    }
    if (!demanded) {
      report.push_back({at("objects", o) + ".demands",
                        "object requested by no user"});
    }
  }

  if (static_cast<int>(instance.distances.size()) != m) {
    report.push_back({"distances", "must be an MxM matrix"});
  } else {
    for (int i = 0; i < m; ++i) {
      if (static_cast<int>(instance.distances[i].size()) != m) {
        report.push_back({at("distances", i), "must have M columns"});
        continue;
      }
      for (int j = 0; j < m; ++j) {
        if (!finite_non_negative(instance.distances[i][j])) {
          report.push_back({at("distances", i) + "[" + std::to_string(j) + "]",
                            "distance must be non-negative"});
        }
      }
    }
  }
  return report;
}

void throw_if_invalid(const Instance& instance) {
  ValidationReport report = validate(instance);
  if (report.empty()) return;
  std::string msg = "invalid instance:";
  for (const auto& v : report) {
    msg += " [" + v.where + ": " + v.message + "]";
  }
  throw std::invalid_argument(msg);
}

bool collective_capacity_feasible(const Instance& instance) {
  Rational capacity;
  for (const auto& c : instance.clients) capacity += c.capacity;
  return capacity >= instance.total_length();
}

double nearest_distance(const Instance& instance, Configuration c, int j) {
  if (c.empty()) throw std::invalid_argument("empty configuration");
  double best = std::numeric_limits<double>::infinity();
  const int m = instance.num_clients();
  for (int member = 0; member < m; ++member) {
    if (!c.contains(member)) continue;
    double d = instance.distances[member][j];
    if (d < best) best = d;
  }
  return best;
}

double config_cost(const Instance& instance, int o, Configuration c) {
  if (c.empty()) throw std::invalid_argument("empty configuration");
  const ObjectSpec& obj = instance.objects[o];
  const double len = obj.length.to_double();
  const int m = instance.num_clients();
  double access = 0.0;
  for (int j = 0; j < m; ++j) {
    if (c.contains(j)) continue;
    double w = obj.demands[j];
    if (w == 0.0) continue;
    access += w * len * nearest_distance(instance, c, j);
  }
  double install = 0.0;
  for (int j = 0; j < m; ++j) {
    if (c.contains(j)) install += obj.install_costs[j];
  }
  return access + install;
}

std::vector<Configuration> enumerate_configs(int num_clients,
                                             std::optional<int> replica_cap) {
  if (num_clients < 1 || num_clients > 31) {
    throw std::invalid_argument("client count must lie in [1, 31]");
  }
  if (replica_cap && *replica_cap < 1) {
    throw std::invalid_argument("replica cap must be at least 1");
  }
  std::vector<Configuration> out;
  const std::uint32_t end = std::uint32_t{1} << num_clients;
  for (std::uint32_t bits = 1; bits < end; ++bits) {
    if (replica_cap && __builtin_popcount(bits) > *replica_cap) continue;
    out.push_back(Configuration(bits));
  }
  return out;
}

Score score_solution(const Instance& instance,
                     std::span<const Configuration> assignment) {
  const int m = instance.num_clients();
  const int n = instance.num_objects();
  if (static_cast<int>(assignment.size()) != n) {
    throw std::invalid_argument("assignment must choose one configuration per object");
  }
  const std::uint32_t all = (std::uint32_t{1} << m) - 1;
  Score score;
  score.loads.assign(m, Rational(0));
  for (int o = 0; o < n; ++o) {
    Configuration c = assignment[o];
    if (c.empty() || (c.bits() & ~all) != 0) {
      throw std::invalid_argument("assignment for object " + std::to_string(o) +
                                  " is not a non-empty subset of the clients");
    }
    score.total_cost += config_cost(instance, o, c);
    for (int j = 0; j < m; ++j) {
      if (c.contains(j)) score.loads[j] += instance.objects[o].length;
    }
  }
  return score;
}

std::vector<int> capacity_violations(const Instance& instance,
                                     std::span<const Rational> loads,
                                     const Rational& slack) {
  std::vector<int> out;
  for (int j = 0; j < instance.num_clients(); ++j) {
    if (loads[j] > instance.clients[j].capacity + slack) out.push_back(j);
  }
  return out;
}

}  // namespace placer
