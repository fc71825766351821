#include "placer/generators.hpp"

#include <random>
#include <stdexcept>

namespace placer {

namespace {

// Modulo reduction keeps draws reproducible across standard libraries
// (std::uniform_int_distribution is implementation-defined).
std::int64_t draw(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

}  // namespace

Instance gen_random(const RandomFamilyParams& params) {
  if (params.clients < 1 || params.objects < 1) {
    throw std::invalid_argument("need at least one client and one object");
  }
  std::mt19937_64 rng(params.seed);
  const int m = params.clients;
  const int n = params.objects;
  Instance instance;

  for (int j = 0; j < m; ++j) {
    Client client;
    client.capacity = Rational(draw(rng, 1, params.max_capacity));
    if (params.with_limits && m > 1) {
      client.client_limit =
          static_cast<int>(draw(rng, 0, std::min(params.max_limit, m - 1)));
    }
    instance.clients.push_back(std::move(client));
  }

  for (int o = 0; o < n; ++o) {
    ObjectSpec obj;
    obj.length = params.nonuniform_lengths
                     ? Rational(draw(rng, 1, 200), 100)
                     : Rational(1);
    for (int j = 0; j < m; ++j) {
      obj.demands.push_back(static_cast<double>(draw(rng, 0, params.max_demand)));
    }
    for (int j = 0; j < m; ++j) {
      obj.install_costs.push_back(
          static_cast<double>(draw(rng, 0, params.max_install)));
    }
    bool demanded = false;
    for (double w : obj.demands) demanded = demanded || w > 0.0;
    if (!demanded) {
      obj.demands[static_cast<std::size_t>(draw(rng, 0, m - 1))] =
          static_cast<double>(draw(rng, 1, std::max(params.max_demand, 1)));
    }
    instance.objects.push_back(std::move(obj));
  }

  instance.distances.assign(m, std::vector<double>(m, 0.0));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i != j) {
        instance.distances[i][j] =
            static_cast<double>(draw(rng, 0, params.max_distance));
      }
    }
  }
  return instance;
}

Instance gen_tightness(int objects, const Rational& epsilon,
                       const Rational& delta) {
  if (objects < 3) throw std::invalid_argument("tightness family needs N >= 3");
  if (epsilon <= Rational(0) || epsilon >= Rational(1)) {
    throw std::invalid_argument("tightness family needs epsilon in (0, 1)");
  }
  if (delta <= Rational(0) || delta >= Rational(1)) {
    throw std::invalid_argument("tightness family needs delta in (0, 1)");
  }
  const int n = objects;
  const Rational long_length = Rational(1) / epsilon;
  const Rational short_length = (Rational(1) - delta) / Rational(n);

  Instance instance;
  instance.clients.push_back({Rational(1), std::nullopt});
  instance.clients.push_back({long_length, std::nullopt});
  for (int o = 0; o < n - 1; ++o) {
    ObjectSpec obj;
    obj.length = short_length;
    obj.demands = {1.0, 1.0};
    obj.install_costs = {0.0, 0.0};
    instance.objects.push_back(std::move(obj));
  }
  ObjectSpec last;
  last.length = long_length;
  last.demands = {0.0, static_cast<double>(n)};
  last.install_costs = {0.0, 0.0};
  instance.objects.push_back(std::move(last));
  instance.distances = {{0.0, 1.0}, {1.0, 0.0}};
  return instance;
}

}  // namespace placer
