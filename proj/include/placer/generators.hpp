#ifndef PLACER_GENERATORS_HPP
#define PLACER_GENERATORS_HPP

#include <cstdint>

#include "placer/model.hpp"
#include "placer/rational.hpp"

namespace placer {

/// Random instance family. All draws come from a seeded mt19937_64 with
/// modulo reduction, so a given parameter set reproduces the same
/// instance on every platform.
struct RandomFamilyParams {
  int clients = 3;
  int objects = 6;
  int max_capacity = 4;   // capacities uniform in {1..max_capacity}
  int max_demand = 9;     // integer demands in {0..max_demand}
  int max_distance = 9;   // integer off-diagonal distances in {0..max_distance}
  int max_install = 9;    // integer installation costs in {0..max_install}
  bool nonuniform_lengths = false;  // hundredths in (0, 2]; else unit lengths
  bool with_limits = false;         // client limits uniform in {0..max_limit}
  int max_limit = 2;
  std::uint64_t seed = 0;
};

Instance gen_random(const RandomFamilyParams& params);

/// The two-client family on which the epsilon * l_max capacity overrun
/// is essentially attained: N-1 short objects of length (1-delta)/N
/// demanded by both clients, one object of length 1/epsilon demanded
/// heavily by client 2 only, capacities 1 and 1/epsilon, zero
/// installation costs, unit distance between the clients. With
/// delta = 1/(N-1) the scaled solve overruns client 2's cache by
/// exactly 1 - 2/N, which approaches epsilon * l_max = 1 as N grows.
/// Requires N >= 3 and epsilon, delta in (0, 1).
Instance gen_tightness(int objects, const Rational& epsilon,
                       const Rational& delta);

}  // namespace placer

#endif  // PLACER_GENERATORS_HPP
