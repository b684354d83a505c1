#pragma once

#include <optional>
#include <string>
#include <vector>

#include "otap/decomposition.hpp"
#include "otap/model.hpp"
#include "otap/rng.hpp"
#include "otap/value_tables.hpp"

namespace otap {

struct AgentState {
  int remaining_budget = 1;  // kUnlimitedBudget for unlimited
  int busy_until = 0;        // available once t >= busy_until
  bool departed = false;     // budget exhausted
};

struct PolicyContext {
  const Instance* instance = nullptr;
  const Indexer* indexer = nullptr;
  int t = 0;                       // 0-based step
  int arrived_type = kNoArrival;
  const std::vector<AgentState>* agents = nullptr;
  Rng* rng = nullptr;

  bool available(int u) const {
    const auto& s = (*agents)[u];
    return !s.departed && s.busy_until <= t;
  }
  int budget(int u) const { return (*agents)[u].remaining_budget; }
};

// Agent ids chosen for the arrived task, sorted ascending.
using AssignmentSet = std::vector<int>;

// Algorithm: sample a candidate set from the decomposition, keep the
// available members whose assign-branch value dominates waiting.
AssignmentSet proposed_step(const PolicyContext& ctx, const SamplingTable& sampling,
                            const ValueTables& tables);

// Same sampling, no value comparison: every available sampled agent is kept.
AssignmentSet nadap_step(const PolicyContext& ctx, const SamplingTable& sampling);

// Up to b_v available neighbors by descending weight * accept_prob.
AssignmentSet greedy_step(const PolicyContext& ctx);

// Uniform subset of size min(b_v, #available neighbors), without replacement.
AssignmentSet random_step(const PolicyContext& ctx);

enum class PolicyKind { Proposed, Nadap, Greedy, Random };

std::optional<PolicyKind> parse_policy_name(const std::string& name);
std::string policy_name(PolicyKind kind);

// Uniform front-end over the four step functions. Sampling tables are
// required for Proposed and Nadap, value tables for Proposed.
struct Policy {
  PolicyKind kind = PolicyKind::Greedy;
  const SamplingTable* sampling = nullptr;
  const ValueTables* tables = nullptr;

  AssignmentSet step(const PolicyContext& ctx) const;
};

Policy make_policy(PolicyKind kind, const SamplingTable* sampling, const ValueTables* tables);

}  // namespace otap
