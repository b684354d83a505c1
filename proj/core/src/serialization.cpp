#include "otap/serialization.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace otap {

using nlohmann::json;

namespace {

json budget_to_json(int budget) {
  if (is_unlimited(budget)) return json("inf");
  return json(budget);
}

int budget_from_json(const json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf" || s == "infinity" || s == "unlimited") return kUnlimitedBudget;
    throw std::invalid_argument("unrecognized budget value '" + s + "'");
  }
  return j.get<int>();
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

}  // namespace

std::string instance_to_json(const Instance& inst) {
  json j;
  j["agents"] = json::array();
  for (const auto& a : inst.agents) {
    j["agents"].push_back({{"id", a.id}, {"budget", budget_to_json(a.budget)}});
  }
  j["task_types"] = json::array();
  for (const auto& v : inst.task_types) {
    j["task_types"].push_back({{"id", v.id}, {"capacity", v.capacity}});
  }
  j["edges"] = json::array();
  for (const auto& e : inst.edges) {
    json occ = json::object();
    for (const auto& [len, mass] : e.occupation.masses()) {
      occ[std::to_string(len)] = mass;
    }
    j["edges"].push_back({{"agent", e.agent},
                          {"type", e.type},
                          {"weight", e.weight},
                          {"accept_prob", e.accept_prob},
                          {"occupation", occ}});
  }
  j["horizon"] = inst.horizon;
  j["arrival"] = inst.arrival.probs;
  return j.dump(2);
}

Instance instance_from_json(const std::string& text) {
  const json j = json::parse(text);
  Instance inst;
  for (const auto& a : j.at("agents")) {
    inst.agents.push_back({a.at("id").get<std::string>(), budget_from_json(a.at("budget"))});
  }
  for (const auto& v : j.at("task_types")) {
    inst.task_types.push_back({v.at("id").get<std::string>(), v.at("capacity").get<int>()});
  }
  for (const auto& e : j.at("edges")) {
    EdgeSpec spec;
    spec.agent = e.at("agent").get<std::string>();
    spec.type = e.at("type").get<std::string>();
    spec.weight = e.at("weight").get<double>();
    spec.accept_prob = e.at("accept_prob").get<double>();
    std::vector<std::pair<int, double>> masses;
    for (const auto& [key, mass] : e.at("occupation").items()) {
      masses.emplace_back(std::stoi(key), mass.get<double>());
    }
    spec.occupation = OccupationPmf(std::move(masses));
    inst.edges.push_back(std::move(spec));
  }
  inst.horizon = j.at("horizon").get<int>();
  inst.arrival.probs = j.at("arrival").get<std::vector<std::vector<double>>>();
  return inst;
}

Instance load_instance(const std::string& path) {
  return instance_from_json(read_text_file(path));
}

void save_instance(const Instance& inst, const std::string& path) {
  write_text_file(path, instance_to_json(inst));
}

std::string solution_to_json(const LpSolution& sol, const Instance& inst,
                             const Indexer& idx) {
  json j;
  j["objective"] = sol.objective;
  j["max_residual"] = sol.max_residual;
  json records = json::array();
  const int T = inst.horizon;
  for (int e = 0; e < idx.num_edges(); ++e) {
    for (int t = 0; t < T; ++t) {
      const double v = sol.x[static_cast<std::size_t>(e) * T + t];
      if (v == 0.0) continue;
      records.push_back({{"agent", inst.edges[e].agent},
                         {"type", inst.edges[e].type},
                         {"t", t + 1},
                         {"value", v}});
    }
  }
  j["x"] = std::move(records);
  return j.dump(2);
}

LpSolution solution_from_json(const std::string& text, const Instance& inst,
                              const Indexer& idx) {
  const json j = json::parse(text);
  const int T = inst.horizon;
  LpSolution sol;
  sol.x.assign(static_cast<std::size_t>(idx.num_edges()) * T, 0.0);
  sol.objective = j.at("objective").get<double>();
  if (j.contains("max_residual")) sol.max_residual = j.at("max_residual").get<double>();
  for (const auto& rec : j.at("x")) {
    const int u = idx.agent_index(rec.at("agent").get<std::string>());
    const int v = idx.type_index(rec.at("type").get<std::string>());
    const int e = idx.edge_between(u, v);
    if (e < 0) throw std::invalid_argument("solution references a missing edge");
    const int t = rec.at("t").get<int>();
    if (t < 1 || t > T) throw std::invalid_argument("solution references t outside [1, T]");
    sol.x[static_cast<std::size_t>(e) * T + (t - 1)] = rec.at("value").get<double>();
  }
  return sol;
}

void save_solution(const LpSolution& sol, const Instance& inst, const Indexer& idx,
                   const std::string& path) {
  write_text_file(path, solution_to_json(sol, inst, idx));
}

LpSolution load_solution(const std::string& path, const Instance& inst, const Indexer& idx) {
  return solution_from_json(read_text_file(path), inst, idx);
}

std::string reports_to_csv(const std::vector<RunReport>& reports) {
  std::ostringstream out;
  out << "policy,N,mean,std,stderr,lp_objective,ratio\n";
  for (const auto& r : reports) {
    out << r.policy << ',' << r.trials << ',' << fmt_double(r.mean) << ','
        << fmt_double(r.stddev) << ',' << fmt_double(r.stderr_mean) << ','
        << fmt_double(r.lp_objective) << ',' << fmt_double(r.ratio) << '\n';
  }
  return out.str();
}

std::string checks_to_csv(const std::vector<CheckResult>& checks) {
  std::ostringstream out;
  out << "check,instance,pass,slack\n";
  for (const auto& c : checks) {
    out << c.check << ',' << c.instance_id << ',' << (c.pass ? "pass" : "fail") << ','
        << fmt_double(c.slack) << '\n';
  }
  return out.str();
}

namespace {

BudgetMode budget_mode_from_json(const json& j) {
  const std::string s = j.get<std::string>();
  if (s == "uniform" || s == "uniform123") return BudgetMode::Uniform123;
  if (s == "inf" || s == "unlimited") return BudgetMode::Unlimited;
  throw std::invalid_argument("unrecognized budget mode '" + s + "'");
}

}  // namespace

SyntheticParams synthetic_params_from_json(const std::string& text) {
  const json j = json::parse(text);
  SyntheticParams p;
  if (j.contains("n_agents")) p.n_agents = j.at("n_agents").get<int>();
  if (j.contains("n_types")) p.n_types = j.at("n_types").get<int>();
  if (j.contains("horizon")) p.horizon = j.at("horizon").get<int>();
  if (j.contains("edge_prob")) p.edge_prob = j.at("edge_prob").get<double>();
  if (j.contains("capacity")) p.capacity = j.at("capacity").get<int>();
  if (j.contains("budget_mode")) p.budget_mode = budget_mode_from_json(j.at("budget_mode"));
  if (j.contains("reusable")) p.reusable = j.at("reusable").get<bool>();
  if (j.contains("kiid")) p.kiid = j.at("kiid").get<bool>();
  if (j.contains("seed")) p.seed = j.at("seed").get<std::uint64_t>();
  return p;
}

IngestParams ingest_params_from_json(const std::string& text) {
  const json j = json::parse(text);
  IngestParams p;
  if (j.contains("n_agents")) p.n_agents = j.at("n_agents").get<int>();
  if (j.contains("n_types")) p.n_types = j.at("n_types").get<int>();
  if (j.contains("horizon")) p.horizon = j.at("horizon").get<int>();
  if (j.contains("capacity")) p.capacity = j.at("capacity").get<int>();
  if (j.contains("budget_mode")) p.budget_mode = budget_mode_from_json(j.at("budget_mode"));
  if (j.contains("kiid")) p.kiid = j.at("kiid").get<bool>();
  if (j.contains("non_reusable")) p.non_reusable = j.at("non_reusable").get<bool>();
  if (j.contains("slot_minutes")) p.slot_minutes = j.at("slot_minutes").get<int>();
  if (j.contains("hour_min")) p.hour_min = j.at("hour_min").get<int>();
  if (j.contains("hour_max")) p.hour_max = j.at("hour_max").get<int>();
  return p;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
}

}  // namespace otap
