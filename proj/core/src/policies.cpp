#include "otap/policies.hpp"

#include <algorithm>
#include <stdexcept>

namespace otap {

AssignmentSet proposed_step(const PolicyContext& ctx, const SamplingTable& sampling,
                            const ValueTables& tables) {
  if (ctx.arrived_type == kNoArrival) return {};
  const auto& dist = sampling.at(ctx.arrived_type, ctx.t);
  AssignmentSet out;
  for (int e : sample_candidate_set(dist, *ctx.rng)) {
    const int u = ctx.indexer->edge_agent(e);
    if (!ctx.available(u)) continue;
    if (decide_assignment(tables, u, e, ctx.t, ctx.budget(u)) == Decision::Assign)
      out.push_back(u);
  }
  std::sort(out.begin(), out.end());
  return out;
}

AssignmentSet nadap_step(const PolicyContext& ctx, const SamplingTable& sampling) {
  if (ctx.arrived_type == kNoArrival) return {};
  const auto& dist = sampling.at(ctx.arrived_type, ctx.t);
  AssignmentSet out;
  for (int e : sample_candidate_set(dist, *ctx.rng)) {
    const int u = ctx.indexer->edge_agent(e);
    if (ctx.available(u)) out.push_back(u);
  }
  std::sort(out.begin(), out.end());
  return out;
}

AssignmentSet greedy_step(const PolicyContext& ctx) {
  if (ctx.arrived_type == kNoArrival) return {};
  const int v = ctx.arrived_type;
  struct Cand {
    double value;
    int agent;
  };
  std::vector<Cand> cands;
  for (int e : ctx.indexer->type_edges(v)) {
    const int u = ctx.indexer->edge_agent(e);
    if (!ctx.available(u)) continue;
    const auto& spec = ctx.instance->edges[e];
    cands.push_back({spec.weight * spec.accept_prob, u});
  }
  std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
    if (a.value != b.value) return a.value > b.value;
    return a.agent < b.agent;
  });
  const int take = std::min<int>(ctx.instance->task_types[v].capacity,
                                 static_cast<int>(cands.size()));
  AssignmentSet out;
  out.reserve(take);
  for (int i = 0; i < take; ++i) out.push_back(cands[i].agent);
  std::sort(out.begin(), out.end());
  return out;
}

AssignmentSet random_step(const PolicyContext& ctx) {
  if (ctx.arrived_type == kNoArrival) return {};
  const int v = ctx.arrived_type;
  AssignmentSet pool;
  for (int e : ctx.indexer->type_edges(v)) {
    const int u = ctx.indexer->edge_agent(e);
    if (ctx.available(u)) pool.push_back(u);
  }
  std::sort(pool.begin(), pool.end());
  const int take = std::min<int>(ctx.instance->task_types[v].capacity,
                                 static_cast<int>(pool.size()));
  // Partial Fisher-Yates.
  for (int i = 0; i < take; ++i) {
    const int j = i + next_int(*ctx.rng, static_cast<int>(pool.size()) - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(take);
  std::sort(pool.begin(), pool.end());
  return pool;
}

std::optional<PolicyKind> parse_policy_name(const std::string& name) {
  if (name == "proposed") return PolicyKind::Proposed;
  if (name == "nadap") return PolicyKind::Nadap;
  if (name == "greedy") return PolicyKind::Greedy;
  if (name == "random") return PolicyKind::Random;
  return std::nullopt;
}

std::string policy_name(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::Proposed: return "proposed";
    case PolicyKind::Nadap: return "nadap";
    case PolicyKind::Greedy: return "greedy";
    case PolicyKind::Random: return "random";
  }
  return "?";
}

AssignmentSet Policy::step(const PolicyContext& ctx) const {
  switch (kind) {
    case PolicyKind::Proposed: return proposed_step(ctx, *sampling, *tables);
    case PolicyKind::Nadap: return nadap_step(ctx, *sampling);
    case PolicyKind::Greedy: return greedy_step(ctx);
    case PolicyKind::Random: return random_step(ctx);
  }
  return {};
}

Policy make_policy(PolicyKind kind, const SamplingTable* sampling, const ValueTables* tables) {
  if ((kind == PolicyKind::Proposed || kind == PolicyKind::Nadap) && sampling == nullptr)
    throw std::invalid_argument(policy_name(kind) + " needs sampling tables");
  if (kind == PolicyKind::Proposed && tables == nullptr)
    throw std::invalid_argument("proposed needs value tables");
  return Policy{kind, sampling, tables};
}

}  // namespace otap
