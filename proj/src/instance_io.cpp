#include "placer/instance_io.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace placer {

namespace {

constexpr int kFileVersion = 1;

[[noreturn]] void fail(const std::string& what) {
  throw std::runtime_error("instance file: " + what);
}

nlohmann::json number_to_json(double v) {
  if (std::isfinite(v) && v == std::floor(v) && std::abs(v) <= 9.0e15) {
    return static_cast<std::int64_t>(v);
  }
  return v;
}

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

Rational json_to_rational(const nlohmann::json& value) {
  if (value.is_string()) return Rational::parse(value.get<std::string>());
  if (value.is_number_integer()) return Rational(value.get<std::int64_t>());
  if (value.is_number_unsigned()) {
    auto v = value.get<std::uint64_t>();
    if (v > static_cast<std::uint64_t>(INT64_MAX)) fail("number out of range");
    return Rational(static_cast<std::int64_t>(v));
  }
  if (value.is_number_float()) return Rational::from_double(value.get<double>());
  fail("expected a number or numeric string, got " + value.dump());
}

double json_to_double(const nlohmann::json& value) {
  if (value.is_string()) {
    return Rational::parse(value.get<std::string>()).to_double();
  }
  if (value.is_number()) return value.get<double>();
  fail("expected a number or numeric string, got " + value.dump());
}

Instance instance_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) fail("top level must be an object");
  if (!doc.contains("version") || doc.at("version").get<int>() != kFileVersion) {
    fail("missing or unsupported version (expected 1)");
  }
  for (const auto& [key, _] : doc.items()) {
    if (key != "version" && key != "clients" && key != "objects" &&
        key != "distances") {
      fail("unknown key '" + key + "'");
    }
  }
  Instance instance;
  for (const auto& c : doc.at("clients")) {
    Client client;
    client.capacity = json_to_rational(c.at("capacity"));
    if (c.contains("client_limit") && !c.at("client_limit").is_null()) {
      client.client_limit = c.at("client_limit").get<int>();
    }
    instance.clients.push_back(std::move(client));
  }
  for (const auto& o : doc.at("objects")) {
    ObjectSpec obj;
    obj.length = json_to_rational(o.at("length"));
    for (const auto& w : o.at("demands")) obj.demands.push_back(json_to_double(w));
    for (const auto& f : o.at("install_costs")) {
      obj.install_costs.push_back(json_to_double(f));
    }
    instance.objects.push_back(std::move(obj));
  }
  for (const auto& row : doc.at("distances")) {
    std::vector<double> r;
    for (const auto& d : row) r.push_back(json_to_double(d));
    instance.distances.push_back(std::move(r));
  }
  return instance;
}

nlohmann::json instance_to_json(const Instance& instance) {
  nlohmann::json doc;
  doc["version"] = kFileVersion;
  doc["clients"] = nlohmann::json::array();
  for (const auto& c : instance.clients) {
    nlohmann::json jc;
    jc["capacity"] = c.capacity.to_string();
    if (c.client_limit) jc["client_limit"] = *c.client_limit;
    doc["clients"].push_back(std::move(jc));
  }
  doc["objects"] = nlohmann::json::array();
  for (const auto& o : instance.objects) {
    nlohmann::json jo;
    jo["length"] = o.length.to_string();
    jo["demands"] = nlohmann::json::array();
    for (double w : o.demands) jo["demands"].push_back(number_to_json(w));
    jo["install_costs"] = nlohmann::json::array();
    for (double f : o.install_costs) {
      jo["install_costs"].push_back(number_to_json(f));
    }
    doc["objects"].push_back(std::move(jo));
  }
  doc["distances"] = nlohmann::json::array();
  for (const auto& row : instance.distances) {
    nlohmann::json jr = nlohmann::json::array();
    for (double d : row) jr.push_back(number_to_json(d));
    doc["distances"].push_back(std::move(jr));
  }
  return doc;
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  return instance_from_json(doc);
}

void save_instance(const std::string& path, const Instance& instance) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << instance_to_json(instance).dump(2) << "\n";
}

std::string instance_hash(const Instance& instance) {
  std::uint64_t h = fnv1a64(instance_to_json(instance).dump());
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

nlohmann::json report_to_json(const SolveReport& report) {
  nlohmann::json doc;
  doc["version"] = kFileVersion;
  doc["solver"] = report.solver;
  doc["status"] = report.status;
  doc["instance_hash"] = report.hash;
  nlohmann::json params = nlohmann::json::object();
  if (report.epsilon) params["epsilon"] = report.epsilon->to_string();
  if (report.replica_caps) params["replica_caps"] = *report.replica_caps;
  doc["parameters"] = std::move(params);
  doc["assignment"] = nlohmann::json::array();
  for (std::size_t o = 0; o < report.assignment.size(); ++o) {
    nlohmann::json entry;
    entry["object"] = o;
    entry["clients"] = report.assignment[o].clients;
    if (!report.assignment[o].servers.empty()) {
      nlohmann::json servers = nlohmann::json::object();
      for (auto [client, server] : report.assignment[o].servers) {
        servers[std::to_string(client)] = server;
      }
      entry["servers"] = std::move(servers);
    }
    doc["assignment"].push_back(std::move(entry));
  }
  doc["total_cost"] = report.total_cost;
  doc["loads"] = nlohmann::json::array();
  for (const auto& l : report.loads) doc["loads"].push_back(l.to_string());
  doc["slacks"] = nlohmann::json::array();
  for (const auto& s : report.slacks) doc["slacks"].push_back(s.to_string());
  if (report.serve_counts) doc["serve_counts"] = *report.serve_counts;
  doc["wall_seconds"] = report.wall_seconds;
  doc["states_visited"] = report.states_visited;
  return doc;
}

SolveReport report_from_json(const nlohmann::json& doc) {
  SolveReport report;
  report.solver = doc.at("solver").get<std::string>();
  report.status = doc.at("status").get<std::string>();
  report.hash = doc.at("instance_hash").get<std::string>();
  const auto& params = doc.at("parameters");
  if (params.contains("epsilon")) {
    report.epsilon = json_to_rational(params.at("epsilon"));
  }
  if (params.contains("replica_caps")) {
    report.replica_caps = params.at("replica_caps").get<std::vector<int>>();
  }
  if (doc.contains("assignment")) {
    for (const auto& entry : doc.at("assignment")) {
      ReportAssignment a;
      a.clients = entry.at("clients").get<std::vector<int>>();
      if (entry.contains("servers")) {
        for (const auto& [client, server] : entry.at("servers").items()) {
          a.servers.emplace_back(std::stoi(client), server.get<int>());
        }
      }
      report.assignment.push_back(std::move(a));
    }
  }
  report.total_cost = doc.value("total_cost", 0.0);
  if (doc.contains("loads")) {
    for (const auto& l : doc.at("loads")) report.loads.push_back(json_to_rational(l));
  }
  if (doc.contains("slacks")) {
    for (const auto& s : doc.at("slacks")) {
      report.slacks.push_back(json_to_rational(s));
    }
  }
  if (doc.contains("serve_counts")) {
    report.serve_counts = doc.at("serve_counts").get<std::vector<int>>();
  }
  report.wall_seconds = doc.value("wall_seconds", 0.0);
  report.states_visited = doc.value("states_visited", std::uint64_t{0});
  return report;
}

SolveReport load_report(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  return report_from_json(doc);
}

void save_report(const std::string& path, const SolveReport& report) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << report_to_json(report).dump(2) << "\n";
}

std::vector<Configuration> assignment_from_report(const Instance& instance,
                                                  const SolveReport& report) {
  const int m = instance.num_clients();
  std::vector<Configuration> assignment;
  for (const auto& entry : report.assignment) {
    std::uint32_t bits = 0;
    for (int j : entry.clients) {
      if (j < 0 || j >= m) {
        throw std::runtime_error("report names client " + std::to_string(j) +
                                 " outside the instance");
      }
      bits |= std::uint32_t{1} << j;
    }
    assignment.push_back(Configuration(bits));
  }
  return assignment;
}

std::vector<PpObjectChoice> pp_assignment_from_report(
    const Instance& instance, const SolveReport& report) {
  const int m = instance.num_clients();
  std::vector<Configuration> configs = assignment_from_report(instance, report);
  std::vector<PpObjectChoice> assignment;
  for (std::size_t o = 0; o < configs.size(); ++o) {
    PpObjectChoice choice;
    choice.config = configs[o];
    for (auto [client, server] : report.assignment[o].servers) {
      if (client < 0 || client >= m || server < 0 || server >= m) {
        throw std::runtime_error("report connection outside the instance");
      }
      choice.pattern.assign(server, client);
    }
    assignment.push_back(choice);
  }
  return assignment;
}

}  // namespace placer
