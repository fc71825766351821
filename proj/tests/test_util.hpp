#ifndef PLACER_TESTS_TEST_UTIL_HPP
#define PLACER_TESTS_TEST_UTIL_HPP

#include <random>
#include <span>
#include <vector>

#include "placer/model.hpp"
#include "placer/rational.hpp"

namespace placer::test {

/// Compact instance builder for hand-written cases.
inline Instance make_instance(std::vector<Rational> capacities,
                              std::vector<Rational> lengths,
                              std::vector<std::vector<double>> demands,
                              std::vector<std::vector<double>> installs,
                              std::vector<std::vector<double>> distances) {
  Instance instance;
  for (auto& c : capacities) instance.clients.push_back({std::move(c), {}});
  for (std::size_t o = 0; o < lengths.size(); ++o) {
    instance.objects.push_back(
        {std::move(lengths[o]), std::move(demands[o]), std::move(installs[o])});
  }
  instance.distances = std::move(distances);
  return instance;
}

inline void set_limits(Instance& instance, const std::vector<int>& limits) {
  for (std::size_t j = 0; j < limits.size(); ++j) {
    instance.clients[j].client_limit = limits[j];
  }
}

/// Instance with the objects reordered: perm[i] names the source object
/// that lands at position i.
inline Instance permute_objects(const Instance& instance,
                                std::span<const int> perm) {
  Instance out = instance;
  out.objects.clear();
  for (int src : perm) out.objects.push_back(instance.objects[src]);
  return out;
}

/// Deterministic Fisher-Yates (std::shuffle is implementation-defined).
inline std::vector<int> shuffled_indices(int n, std::uint64_t seed) {
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  std::mt19937_64 rng(seed);
  for (int i = n - 1; i > 0; --i) {
    int j = static_cast<int>(rng() % static_cast<std::uint64_t>(i + 1));
    std::swap(perm[i], perm[j]);
  }
  return perm;
}

}  // namespace placer::test

#endif  // PLACER_TESTS_TEST_UTIL_HPP
