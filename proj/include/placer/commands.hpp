#ifndef PLACER_COMMANDS_HPP
#define PLACER_COMMANDS_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "placer/generators.hpp"

namespace placer::cli {

/// Exit codes shared by every subcommand.
inline constexpr int kExitSolved = 0;
inline constexpr int kExitError = 1;  // usage, I/O, validation, failed verify
inline constexpr int kExitInfeasible = 2;
inline constexpr int kExitBudget = 3;

struct SolveArgs {
  std::string mode;  // dp | pp
  std::string in_path;
  std::optional<std::string> out_path;
  std::optional<std::string> epsilon;    // exact decimal or fraction
  std::optional<int> replica_cap;        // uniform per-object cap
  std::optional<std::string> caps_file;  // JSON array of per-object caps
  int max_clients = 8;
};
int cmd_solve(const SolveArgs& args);

struct GenArgs {
  std::string family;  // random | tightness
  std::optional<std::string> out_path;
  RandomFamilyParams random;
  int objects = 10;                     // tightness N
  std::optional<std::string> epsilon;   // tightness, required
  std::optional<std::string> delta;     // tightness, default 1/(N-1)
};
int cmd_gen(const GenArgs& args);

struct VerifyArgs {
  std::string in_path;
  std::string report_path;
};
int cmd_verify(const VerifyArgs& args);

struct OracleArgs {
  std::string mode;  // dp | pp
  std::string in_path;
  std::optional<std::string> out_path;
  std::uint64_t max_assignments = 100'000'000;
  double max_seconds = 60.0;
};
int cmd_oracle(const OracleArgs& args);

}  // namespace placer::cli

#endif  // PLACER_COMMANDS_HPP
