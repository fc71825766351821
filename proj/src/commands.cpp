#include "placer/commands.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "placer/dp_scaled.hpp"
#include "placer/dp_uniform.hpp"
#include "placer/instance_io.hpp"
#include "placer/oracle.hpp"
#include "placer/page_placement.hpp"

namespace placer::cli {

namespace {

void emit_report(const SolveReport& report,
                 const std::optional<std::string>& out_path) {
  if (out_path) {
    save_report(*out_path, report);
  } else {
    std::cout << report_to_json(report).dump(2) << "\n";
  }
}

int report_validation(const Instance& instance) {
  ValidationReport violations = validate(instance);
  for (const auto& v : violations) {
    std::cerr << "invalid instance: " << v.where << ": " << v.message << "\n";
  }
  return violations.empty() ? kExitSolved : kExitError;
}

std::vector<Rational> slacks_of(const Instance& instance,
                                std::span<const Rational> loads) {
  std::vector<Rational> slacks;
  for (int j = 0; j < instance.num_clients(); ++j) {
    slacks.push_back(loads[j] - instance.clients[j].capacity);
  }
  return slacks;
}

std::vector<ReportAssignment> report_assignment(
    std::span<const Configuration> assignment) {
  std::vector<ReportAssignment> out;
  for (Configuration c : assignment) out.push_back({c.members(), {}});
  return out;
}

std::vector<ReportAssignment> report_assignment(
    const Instance& instance, std::span<const PpObjectChoice> assignment) {
  std::vector<ReportAssignment> out;
  for (const auto& [c, pattern] : assignment) {
    ReportAssignment entry{c.members(), {}};
    for (int j = 0; j < instance.num_clients(); ++j) {
      if (pattern.server_of[j] >= 0) {
        entry.servers.emplace_back(j, pattern.server_of[j]);
      }
    }
    out.push_back(std::move(entry));
  }
  return out;
}

const char* status_name(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal:
      return "optimal";
    case SolveStatus::kInfeasible:
      return "infeasible";
    case SolveStatus::kCertifiedInfeasible:
      return "certified-infeasible";
  }
  return "unknown";
}

std::optional<std::vector<int>> resolve_caps(const SolveArgs& args, int n) {
  if (args.replica_cap && args.caps_file) {
    throw std::invalid_argument("--replica-cap and --caps-file are exclusive");
  }
  if (args.replica_cap) {
    return std::vector<int>(static_cast<std::size_t>(n), *args.replica_cap);
  }
  if (args.caps_file) {
    std::ifstream in(*args.caps_file);
    if (!in) throw std::runtime_error("cannot open " + *args.caps_file);
    nlohmann::json doc;
    in >> doc;
    auto caps = doc.get<std::vector<int>>();
    if (static_cast<int>(caps.size()) != n) {
      throw std::invalid_argument("caps file must list one cap per object");
    }
    return caps;
  }
  return std::nullopt;
}

int solve_dp_mode(const Instance& instance, const SolveArgs& args,
                  SolveReport& report) {
  DpOptions options;
  options.max_clients = args.max_clients;
  options.replica_caps = resolve_caps(args, instance.num_objects());
  if (options.replica_caps) report.replica_caps = options.replica_caps;

  DpResult result;
  if (auto units = uniform_units(instance)) {
    // Exact route. Capacities beyond one copy of everything are dead
    // weight for the table, cap them at N units.
    report.solver = "dp";
    for (auto& cap : units->capacities) {
      cap = std::min<std::int64_t>(cap, instance.num_objects());
    }
    result = solve_dp_units(instance, units->lengths, units->capacities, options);
  } else {
    if (!args.epsilon) {
      std::cerr << "object lengths are not uniform; pass --epsilon to solve "
                   "with the scaled program (capacities may then overrun by "
                   "epsilon * l_max)\n";
      return kExitError;
    }
    report.solver = "dp-nu";
    report.epsilon = Rational::parse(*args.epsilon);
    result = solve_dp_nu(instance, *report.epsilon, options);
  }

  report.status = status_name(result.status);
  report.wall_seconds = result.stats.wall_seconds;
  report.states_visited = result.stats.states_visited;
  if (result.status != SolveStatus::kOptimal) return kExitInfeasible;
  report.assignment = report_assignment(result.solution.assignment);
  report.total_cost = result.solution.total_cost;
  report.loads = result.solution.loads;
  report.slacks = slacks_of(instance, result.solution.loads);
  return kExitSolved;
}

int solve_pp_mode(const Instance& instance, const SolveArgs& args,
                  SolveReport& report) {
  if (args.replica_cap || args.caps_file) {
    throw std::invalid_argument("replica caps apply to --mode dp only");
  }
  bool any_limit = false;
  for (const auto& c : instance.clients) any_limit |= c.client_limit.has_value();
  if (!any_limit) {
    std::cerr << "no client has a client_limit; page placement adds nothing "
                 "here, use --mode dp\n";
    return kExitError;
  }

  PpOptions options;
  options.max_clients = args.max_clients;
  PpResult result;
  if (auto units = uniform_units(instance)) {
    report.solver = "pp";
    for (auto& cap : units->capacities) {
      cap = std::min<std::int64_t>(cap, instance.num_objects());
    }
    result = solve_pp_units(instance, units->lengths, units->capacities, options);
  } else {
    if (!args.epsilon) {
      std::cerr << "object lengths are not uniform; pass --epsilon to solve "
                   "with the scaled program (cache capacities may then "
                   "overrun by epsilon * l_max; client limits stay exact)\n";
      return kExitError;
    }
    report.solver = "pp-nu";
    report.epsilon = Rational::parse(*args.epsilon);
    result = solve_pp_nu(instance, *report.epsilon, options);
  }

  report.status = status_name(result.status);
  report.wall_seconds = result.stats.wall_seconds;
  report.states_visited = result.stats.states_visited;
  if (result.status != SolveStatus::kOptimal) return kExitInfeasible;
  report.assignment = report_assignment(instance, result.solution.assignment);
  report.total_cost = result.solution.total_cost;
  report.loads = result.solution.loads;
  report.slacks = slacks_of(instance, result.solution.loads);
  report.serve_counts = result.solution.serve_counts;
  return kExitSolved;
}

}  // namespace

int cmd_solve(const SolveArgs& args) {
  try {
    Instance instance = load_instance(args.in_path);
    if (int rc = report_validation(instance); rc != kExitSolved) return rc;

    SolveReport report;
    report.hash = instance_hash(instance);
    int rc;
    if (args.mode == "dp") {
      rc = solve_dp_mode(instance, args, report);
    } else if (args.mode == "pp") {
      rc = solve_pp_mode(instance, args, report);
    } else {
      std::cerr << "unknown mode '" << args.mode << "' (expected dp or pp)\n";
      return kExitError;
    }
    if (rc == kExitSolved || rc == kExitInfeasible) {
      emit_report(report, args.out_path);
    }
    return rc;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}

int cmd_gen(const GenArgs& args) {
  try {
    std::uint64_t seed = args.random.seed;
    if (const char* env = std::getenv("PLACER_SEED")) {
      seed = std::strtoull(env, nullptr, 10);
    }
    Instance instance;
    if (args.family == "random") {
      RandomFamilyParams params = args.random;
      params.seed = seed;
      instance = gen_random(params);
    } else if (args.family == "tightness") {
      if (!args.epsilon) {
        std::cerr << "tightness family requires --epsilon\n";
        return kExitError;
      }
      Rational epsilon = Rational::parse(*args.epsilon);
      Rational delta = args.delta
                           ? Rational::parse(*args.delta)
                           : Rational(1, static_cast<std::int64_t>(args.objects) - 1);
      instance = gen_tightness(args.objects, epsilon, delta);
    } else {
      std::cerr << "unknown family '" << args.family
                << "' (expected random or tightness)\n";
      return kExitError;
    }
    if (args.out_path) {
      save_instance(*args.out_path, instance);
    } else {
      std::cout << instance_to_json(instance).dump(2) << "\n";
    }
    return kExitSolved;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}

int cmd_verify(const VerifyArgs& args) {
  int failures = 0;
  auto check = [&failures](bool ok, const std::string& name,
                           const std::string& detail = "") {
    if (ok) {
      std::cout << "PASS " << name << "\n";
    } else {
      ++failures;
      std::cout << "FAIL " << name << (detail.empty() ? "" : ": " + detail)
                << "\n";
    }
  };

  try {
    Instance instance = load_instance(args.in_path);
    if (int rc = report_validation(instance); rc != kExitSolved) return rc;
    SolveReport report = load_report(args.report_path);

    if (report.hash != instance_hash(instance)) {
      std::cerr << "error: instance hash mismatch (report was produced for a "
                   "different instance)\n";
      return kExitError;
    }
    std::cout << "PASS instance hash\n";

    if (report.status != "optimal") {
      std::cout << "PASS nothing to verify (status " << report.status << ")\n";
      return kExitSolved;
    }

    const bool is_pp = report.solver == "pp" || report.solver == "pp-nu" ||
                       report.solver == "oracle-pp";
    double recomputed_cost = 0.0;
    std::vector<Rational> recomputed_loads;
    if (is_pp) {
      auto assignment = pp_assignment_from_report(instance, report);
      PpScore score = score_pp_solution(instance, assignment);
      recomputed_cost = score.total_cost;
      recomputed_loads = std::move(score.loads);
      check(report.serve_counts && score.serve_counts == *report.serve_counts,
            "serve counts");
      bool limits_ok = true;
      for (int j = 0; j < instance.num_clients(); ++j) {
        int limit = std::min<int>(
            instance.clients[j].client_limit.value_or(instance.num_clients() - 1),
            instance.num_clients() - 1);
        limits_ok = limits_ok && score.serve_counts[j] <= limit;
      }
      check(limits_ok, "client limits");
    } else {
      auto assignment = assignment_from_report(instance, report);
      Score score = score_solution(instance, assignment);
      recomputed_cost = score.total_cost;
      recomputed_loads = std::move(score.loads);
      if (report.replica_caps) {
        bool caps_ok = true;
        for (std::size_t o = 0; o < assignment.size(); ++o) {
          caps_ok = caps_ok && assignment[o].size() <= (*report.replica_caps)[o];
        }
        check(caps_ok, "replica caps");
      }
    }

    check(std::abs(recomputed_cost - report.total_cost) <=
              1e-9 * std::max(1.0, std::abs(report.total_cost)),
          "cost match",
          "cost mismatch: report " + std::to_string(report.total_cost) +
              ", recomputed " + std::to_string(recomputed_cost));
    check(recomputed_loads == report.loads, "loads match", "loads mismatch");

    Rational allowance(0);
    if (report.epsilon) allowance = *report.epsilon * instance.max_length();
    bool loads_ok = true;
    std::string blowup_detail;
    for (int j = 0; j < instance.num_clients(); ++j) {
      Rational slack = recomputed_loads[j] - instance.clients[j].capacity;
      bool ok = report.epsilon
                    ? (slack <= allowance ||
                       slack.to_double() <= allowance.to_double() + 1e-9)
                    : slack <= Rational(0);
      if (!ok) {
        loads_ok = false;
        blowup_detail = "client " + std::to_string(j) + " slack " +
                        slack.to_string() + " over allowance " +
                        allowance.to_string();
      }
    }
    check(loads_ok, report.epsilon ? "blow-up bound" : "capacities",
          report.epsilon ? "blow-up exceeded: " + blowup_detail
                         : "capacity exceeded: " + blowup_detail);

    return failures == 0 ? kExitSolved : kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}

int cmd_oracle(const OracleArgs& args) {
  try {
    Instance instance = load_instance(args.in_path);
    if (int rc = report_validation(instance); rc != kExitSolved) return rc;

    OracleBudget budget;
    budget.max_assignments = args.max_assignments;
    budget.max_seconds = args.max_seconds;

    SolveReport report;
    report.hash = instance_hash(instance);
    OracleStatus status;
    if (args.mode == "dp") {
      report.solver = "oracle-dp";
      OracleDpResult result = oracle_dp(instance, std::nullopt, budget);
      status = result.status;
      report.wall_seconds = result.wall_seconds;
      report.states_visited = result.assignments_checked;
      if (status == OracleStatus::kOptimal) {
        report.assignment = report_assignment(result.solution.assignment);
        report.total_cost = result.solution.total_cost;
        report.loads = result.solution.loads;
        report.slacks = slacks_of(instance, result.solution.loads);
      }
    } else if (args.mode == "pp") {
      report.solver = "oracle-pp";
      OraclePpResult result = oracle_pp(instance, budget);
      status = result.status;
      report.wall_seconds = result.wall_seconds;
      report.states_visited = result.assignments_checked;
      if (status == OracleStatus::kOptimal) {
        report.assignment = report_assignment(instance, result.solution.assignment);
        report.total_cost = result.solution.total_cost;
        report.loads = result.solution.loads;
        report.slacks = slacks_of(instance, result.solution.loads);
        report.serve_counts = result.solution.serve_counts;
      }
    } else {
      std::cerr << "unknown mode '" << args.mode << "' (expected dp or pp)\n";
      return kExitError;
    }

    switch (status) {
      case OracleStatus::kOptimal:
        report.status = "optimal";
        emit_report(report, args.out_path);
        return kExitSolved;
      case OracleStatus::kInfeasible:
        report.status = "infeasible";
        emit_report(report, args.out_path);
        return kExitInfeasible;
      case OracleStatus::kBudgetExceeded:
        std::cerr << "oracle budget exceeded\n";
        return kExitBudget;
    }
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace placer::cli
