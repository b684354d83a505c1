#include "otap/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace otap {

OccupationPmf::OccupationPmf(std::vector<std::pair<int, double>> masses)
    : masses_(std::move(masses)) {
  std::sort(masses_.begin(), masses_.end());
}

OccupationPmf OccupationPmf::point_mass(int length) {
  return OccupationPmf({{length, 1.0}});
}

double OccupationPmf::mass_at(int length) const {
  for (const auto& [len, m] : masses_) {
    if (len == length) return m;
    if (len > length) break;
  }
  return 0.0;
}

double OccupationPmf::cdf(int length) const {
  double acc = 0.0;
  for (const auto& [len, m] : masses_) {
    if (len > length) break;
    acc += m;
  }
  return acc;
}

double OccupationPmf::survival(int length) const {
  double acc = 0.0;
  for (const auto& [len, m] : masses_) {
    if (len >= length) acc += m;
  }
  return acc;
}

double OccupationPmf::total_mass() const {
  double acc = 0.0;
  for (const auto& [len, m] : masses_) {
    (void)len;
    acc += m;
  }
  return acc;
}

int OccupationPmf::min_support() const {
  return masses_.empty() ? 0 : masses_.front().first;
}

int OccupationPmf::max_support() const {
  return masses_.empty() ? 0 : masses_.back().first;
}

double ArrivalSchedule::column_sum(int t) const {
  double acc = 0.0;
  for (const auto& row : probs) acc += row[t];
  return acc;
}

bool ArrivalSchedule::is_kiid(double tol) const {
  for (const auto& row : probs) {
    for (double p : row) {
      if (std::abs(p - row[0]) > tol) return false;
    }
  }
  return true;
}

namespace {

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", x);
  return buf;
}

}  // namespace

std::vector<Violation> validate_instance(const Instance& inst) {
  std::vector<Violation> out;
  const int T = inst.horizon;
  if (T < 1) out.push_back({"horizon", "horizon must be >= 1, got " + std::to_string(T)});

  std::set<std::string> agent_ids, type_ids;
  for (const auto& a : inst.agents) {
    if (!agent_ids.insert(a.id).second)
      out.push_back({"agents", "duplicate agent id '" + a.id + "'"});
    if (!is_unlimited(a.budget) && a.budget < 1)
      out.push_back({"budget", "agent '" + a.id + "' has budget " + std::to_string(a.budget) +
                               ", expected >= 1 or unlimited"});
  }
  for (const auto& v : inst.task_types) {
    if (!type_ids.insert(v.id).second)
      out.push_back({"task_types", "duplicate task type id '" + v.id + "'"});
    if (v.capacity < 1)
      out.push_back({"capacity", "type '" + v.id + "' has capacity " +
                                 std::to_string(v.capacity) + ", expected >= 1"});
  }

  std::set<std::pair<std::string, std::string>> seen_pairs;
  for (const auto& e : inst.edges) {
    const std::string name = "(" + e.agent + ", " + e.type + ")";
    if (!agent_ids.count(e.agent))
      out.push_back({"edges", "edge " + name + " references unknown agent"});
    if (!type_ids.count(e.type))
      out.push_back({"edges", "edge " + name + " references unknown task type"});
    if (!seen_pairs.insert({e.agent, e.type}).second)
      out.push_back({"edges", "duplicate edge " + name});
    if (e.weight < 0.0)
      out.push_back({"weight", "edge " + name + " has weight " + fmt(e.weight) + " < 0"});
    if (e.accept_prob < 0.0 || e.accept_prob > 1.0)
      out.push_back({"accept_prob", "edge " + name + " has accept_prob " + fmt(e.accept_prob) +
                                    " outside [0, 1]"});
    double total = 0.0;
    for (const auto& [len, m] : e.occupation.masses()) {
      if (m < 0.0)
        out.push_back({"occupation", "edge " + name + " has negative mass at " +
                                     std::to_string(len)});
      if (len < 1 || len > T)
        out.push_back({"occupation", "edge " + name + " has support " + std::to_string(len) +
                                     " outside [1, " + std::to_string(T) + "]"});
      total += m;
    }
    if (std::abs(total - 1.0) > kProbTol)
      out.push_back({"occupation", "edge " + name + " masses sum to " + fmt(total)});
  }

  const auto& sched = inst.arrival;
  if (static_cast<int>(sched.probs.size()) != static_cast<int>(inst.task_types.size())) {
    out.push_back({"arrival", "arrival matrix has " + std::to_string(sched.probs.size()) +
                              " rows, expected one per task type"});
  } else {
    for (size_t v = 0; v < sched.probs.size(); ++v) {
      if (static_cast<int>(sched.probs[v].size()) != T) {
        out.push_back({"arrival", "arrival row " + std::to_string(v) + " has length " +
                                  std::to_string(sched.probs[v].size()) + ", expected " +
                                  std::to_string(T)});
        return out;  // column checks below would index out of range
      }
      for (int t = 0; t < T; ++t) {
        const double p = sched.probs[v][t];
        if (p < 0.0 || p > 1.0 + kProbTol)
          out.push_back({"arrival", "p[" + inst.task_types[v].id + "," + std::to_string(t + 1) +
                                    "] = " + fmt(p) + " outside [0, 1]"});
      }
    }
    for (int t = 0; t < T; ++t) {
      const double s = sched.column_sum(t);
      if (s > 1.0 + kProbTol)
        out.push_back({"arrival", "column " + std::to_string(t + 1) + " sums to " + fmt(s) +
                                  " > 1"});
    }
  }
  return out;
}

Instance normalize_instance(Instance inst) {
  std::set<std::string> zero_budget;
  for (auto& a : inst.agents) {
    if (a.budget == 0) {
      zero_budget.insert(a.id);
      a.budget = 1;
    }
  }
  if (!zero_budget.empty()) {
    std::vector<EdgeSpec> kept;
    kept.reserve(inst.edges.size());
    for (auto& e : inst.edges) {
      if (zero_budget.count(e.agent) && e.accept_prob < 1.0) continue;
      kept.push_back(std::move(e));
    }
    inst.edges = std::move(kept);
  }
  return inst;
}

ArrivalSequence sample_arrival_sequence(const ArrivalSchedule& sched, std::uint64_t seed) {
  const int T = sched.num_slots();
  const int V = static_cast<int>(sched.probs.size());
  ArrivalSequence seq(T, kNoArrival);
  Rng rng = make_rng(seed);
  for (int t = 0; t < T; ++t) {
    double u = next_double(rng);
    for (int v = 0; v < V; ++v) {
      u -= sched.probs[v][t];
      if (u < 0.0) {
        seq[t] = v;
        break;
      }
    }
  }
  return seq;
}

Indexer::Indexer(const Instance& inst) {
  for (size_t i = 0; i < inst.agents.size(); ++i) {
    if (!agent_by_id_.emplace(inst.agents[i].id, static_cast<int>(i)).second)
      throw std::invalid_argument("duplicate agent id '" + inst.agents[i].id + "'");
  }
  for (size_t i = 0; i < inst.task_types.size(); ++i) {
    if (!type_by_id_.emplace(inst.task_types[i].id, static_cast<int>(i)).second)
      throw std::invalid_argument("duplicate task type id '" + inst.task_types[i].id + "'");
  }
  agent_edges_.resize(inst.agents.size());
  type_edges_.resize(inst.task_types.size());
  edge_agent_.reserve(inst.edges.size());
  edge_type_.reserve(inst.edges.size());
  for (size_t e = 0; e < inst.edges.size(); ++e) {
    const auto& spec = inst.edges[e];
    auto ua = agent_by_id_.find(spec.agent);
    auto vt = type_by_id_.find(spec.type);
    if (ua == agent_by_id_.end())
      throw std::invalid_argument("edge references unknown agent '" + spec.agent + "'");
    if (vt == type_by_id_.end())
      throw std::invalid_argument("edge references unknown task type '" + spec.type + "'");
    const int u = ua->second, v = vt->second;
    const std::int64_t key = static_cast<std::int64_t>(u) * (1LL << 32) + v;
    if (!edge_by_pair_.emplace(key, static_cast<int>(e)).second)
      throw std::invalid_argument("duplicate edge (" + spec.agent + ", " + spec.type + ")");
    edge_agent_.push_back(u);
    edge_type_.push_back(v);
    agent_edges_[u].push_back(static_cast<int>(e));
    type_edges_[v].push_back(static_cast<int>(e));
  }
}

int Indexer::agent_index(const std::string& id) const {
  auto it = agent_by_id_.find(id);
  if (it == agent_by_id_.end()) throw std::invalid_argument("unknown agent '" + id + "'");
  return it->second;
}

int Indexer::type_index(const std::string& id) const {
  auto it = type_by_id_.find(id);
  if (it == type_by_id_.end()) throw std::invalid_argument("unknown task type '" + id + "'");
  return it->second;
}

int Indexer::edge_between(int u, int v) const {
  const std::int64_t key = static_cast<std::int64_t>(u) * (1LL << 32) + v;
  auto it = edge_by_pair_.find(key);
  return it == edge_by_pair_.end() ? -1 : it->second;
}

bool is_non_reusable(const Instance& inst, double tol) {
  for (const auto& e : inst.edges) {
    if (std::abs(e.occupation.mass_at(inst.horizon) - 1.0) > tol) return false;
  }
  return true;
}

}  // namespace otap
