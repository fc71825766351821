// placer: exact solvers for data placement and page placement on
// networks with a small, fixed number of clients.

#include <CLI11.hpp>

#include "placer/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "Exact data/page placement solvers with configuration enumeration "
      "dynamic programs, a length-scaling mode for non-uniform objects and "
      "an exhaustive verification oracle"};
  app.require_subcommand(1);

  placer::cli::SolveArgs solve_args;
  CLI::App* solve = app.add_subcommand("solve", "Solve an instance file");
  solve->add_option("--mode", solve_args.mode, "dp or pp")->required();
  solve->add_option("--in", solve_args.in_path, "instance file")->required();
  std::string solve_out;
  CLI::Option* solve_out_opt =
      solve->add_option("--out", solve_out, "report file (default stdout)");
  std::string solve_eps;
  CLI::Option* solve_eps_opt = solve->add_option(
      "--epsilon", solve_eps,
      "capacity overrun factor for non-uniform lengths, exact decimal or "
      "fraction (e.g. 0.5 or 1/2)");
  int replica_cap = 0;
  CLI::Option* cap_opt = solve->add_option(
      "--replica-cap", replica_cap, "max replicas per object (dp mode)");
  std::string caps_file;
  CLI::Option* caps_file_opt = solve->add_option(
      "--caps-file", caps_file, "JSON array with one replica cap per object");
  solve->add_option("--max-clients", solve_args.max_clients,
                    "client-count guard (state space is exponential in it)")
      ->capture_default_str();

  placer::cli::GenArgs gen_args;
  CLI::App* gen = app.add_subcommand("gen", "Generate an instance file");
  gen->add_option("--family", gen_args.family, "random or tightness")
      ->required();
  std::string gen_out;
  CLI::Option* gen_out_opt =
      gen->add_option("--out", gen_out, "instance file (default stdout)");
  gen->add_option("--seed", gen_args.random.seed,
                  "random family seed (PLACER_SEED overrides)")
      ->capture_default_str();
  gen->add_option("--clients", gen_args.random.clients, "random: client count")
      ->capture_default_str();
  int gen_objects = 0;
  CLI::Option* gen_objects_opt = gen->add_option(
      "--objects", gen_objects, "object count (random: 6, tightness: 10)");
  gen->add_option("--max-capacity", gen_args.random.max_capacity,
                  "random: capacities drawn from 1..this")
      ->capture_default_str();
  gen->add_option("--max-demand", gen_args.random.max_demand,
                  "random: demands drawn from 0..this")
      ->capture_default_str();
  gen->add_option("--max-distance", gen_args.random.max_distance,
                  "random: distances drawn from 0..this")
      ->capture_default_str();
  gen->add_option("--max-install", gen_args.random.max_install,
                  "random: installation costs drawn from 0..this")
      ->capture_default_str();
  gen->add_flag("--nonuniform", gen_args.random.nonuniform_lengths,
                "random: fractional lengths instead of unit lengths");
  gen->add_flag("--with-limits", gen_args.random.with_limits,
                "random: attach client limits (page placement)");
  gen->add_option("--max-limit", gen_args.random.max_limit,
                  "random: client limits drawn from 0..this")
      ->capture_default_str();
  std::string gen_eps;
  CLI::Option* gen_eps_opt = gen->add_option(
      "--epsilon", gen_eps, "tightness: epsilon in (0,1), exact string");
  std::string gen_delta;
  CLI::Option* gen_delta_opt = gen->add_option(
      "--delta", gen_delta, "tightness: delta in (0,1), default 1/(N-1)");

  placer::cli::VerifyArgs verify_args;
  CLI::App* verify =
      app.add_subcommand("verify", "Re-check a report against its instance");
  verify->add_option("--in", verify_args.in_path, "instance file")->required();
  verify->add_option("--report", verify_args.report_path, "report file")
      ->required();

  placer::cli::OracleArgs oracle_args;
  CLI::App* oracle = app.add_subcommand(
      "oracle", "Exhaustive reference solve (small instances only)");
  oracle->add_option("--mode", oracle_args.mode, "dp or pp")->required();
  oracle->add_option("--in", oracle_args.in_path, "instance file")->required();
  std::string oracle_out;
  CLI::Option* oracle_out_opt =
      oracle->add_option("--out", oracle_out, "report file (default stdout)");
  oracle->add_option("--budget", oracle_args.max_assignments,
                     "max assignments to enumerate")
      ->capture_default_str();
  oracle->add_option("--time-limit", oracle_args.max_seconds,
                     "max enumeration seconds")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  if (solve->parsed()) {
    if (*solve_out_opt) solve_args.out_path = solve_out;
    if (*solve_eps_opt) solve_args.epsilon = solve_eps;
    if (*cap_opt) solve_args.replica_cap = replica_cap;
    if (*caps_file_opt) solve_args.caps_file = caps_file;
    return placer::cli::cmd_solve(solve_args);
  }
  if (gen->parsed()) {
    if (*gen_out_opt) gen_args.out_path = gen_out;
    if (*gen_eps_opt) gen_args.epsilon = gen_eps;
    if (*gen_delta_opt) gen_args.delta = gen_delta;
    if (*gen_objects_opt) {
      gen_args.random.objects = gen_objects;
      gen_args.objects = gen_objects;
    }
    return placer::cli::cmd_gen(gen_args);
  }
  if (verify->parsed()) {
    return placer::cli::cmd_verify(verify_args);
  }
  if (oracle->parsed()) {
    if (*oracle_out_opt) oracle_args.out_path = oracle_out;
    return placer::cli::cmd_oracle(oracle_args);
  }
  return placer::cli::kExitError;
}
