#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "otap/rng.hpp"

namespace otap {

// Sentinel for an unlimited rejection budget.
inline constexpr int kUnlimitedBudget = -1;

// Marks an empty slot in an arrival sequence.
inline constexpr int kNoArrival = -1;

inline constexpr double kProbTol = 1e-9;

inline bool is_unlimited(int budget) { return budget == kUnlimitedBudget; }

// Distribution of an occupation time over {1, ..., T}, stored sparsely.
class OccupationPmf {
 public:
  OccupationPmf() = default;
  explicit OccupationPmf(std::vector<std::pair<int, double>> masses);

  static OccupationPmf point_mass(int length);

  const std::vector<std::pair<int, double>>& masses() const { return masses_; }

  double mass_at(int length) const;
  // Pr[C <= length]
  double cdf(int length) const;
  // Pr[C >= length]
  double survival(int length) const;
  double total_mass() const;
  int min_support() const;
  int max_support() const;
  bool empty() const { return masses_.empty(); }

 private:
  std::vector<std::pair<int, double>> masses_;  // sorted by length
};

struct AgentSpec {
  std::string id;
  int budget = 1;  // kUnlimitedBudget for unlimited rejections
};

struct TaskTypeSpec {
  std::string id;
  int capacity = 1;
};

struct EdgeSpec {
  std::string agent;
  std::string type;
  double weight = 0.0;
  double accept_prob = 1.0;
  OccupationPmf occupation;
};

// probs[v][t] is the probability that type v arrives at step t (0-based).
// The per-step residual 1 - sum_v probs[v][t] is the no-arrival probability.
struct ArrivalSchedule {
  std::vector<std::vector<double>> probs;

  int num_slots() const { return probs.empty() ? 0 : static_cast<int>(probs[0].size()); }
  double prob(int type, int t) const { return probs[type][t]; }
  double column_sum(int t) const;
  bool is_kiid(double tol = 1e-12) const;
};

struct Instance {
  std::vector<AgentSpec> agents;
  std::vector<TaskTypeSpec> task_types;
  std::vector<EdgeSpec> edges;
  int horizon = 1;
  ArrivalSchedule arrival;
};

// One broken invariant, reported as data.
struct Violation {
  std::string field;
  std::string message;
};

std::vector<Violation> validate_instance(const Instance& inst);

// Applies the zero-budget reduction: agents with budget 0 lose their
// accept_prob < 1 edges and get budget 1. Idempotent.
Instance normalize_instance(Instance inst);

// arrivals[t] is a type index or kNoArrival; length equals the horizon.
using ArrivalSequence = std::vector<int>;

ArrivalSequence sample_arrival_sequence(const ArrivalSchedule& sched, std::uint64_t seed);

// Dense cross-references between agents, types and edges.
// Construction throws std::invalid_argument on dangling ids or duplicates.
class Indexer {
 public:
  explicit Indexer(const Instance& inst);

  int num_agents() const { return static_cast<int>(agent_edges_.size()); }
  int num_types() const { return static_cast<int>(type_edges_.size()); }
  int num_edges() const { return static_cast<int>(edge_agent_.size()); }

  int edge_agent(int e) const { return edge_agent_[e]; }
  int edge_type(int e) const { return edge_type_[e]; }
  const std::vector<int>& agent_edges(int u) const { return agent_edges_[u]; }
  const std::vector<int>& type_edges(int v) const { return type_edges_[v]; }

  int agent_index(const std::string& id) const;
  int type_index(const std::string& id) const;

  // Edge index for (agent, type), or -1 when absent.
  int edge_between(int u, int v) const;

 private:
  std::vector<int> edge_agent_, edge_type_;
  std::vector<std::vector<int>> agent_edges_, type_edges_;
  std::unordered_map<std::string, int> agent_by_id_, type_by_id_;
  std::unordered_map<std::int64_t, int> edge_by_pair_;
};

// True when every occupation pmf is a point mass at the horizon.
bool is_non_reusable(const Instance& inst, double tol = 1e-9);

}  // namespace otap
