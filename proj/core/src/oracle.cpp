#include "otap/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace otap {

namespace {

struct SeqDp {
  const Instance& inst;
  const Indexer& idx;
  const ArrivalSequence& seq;
  int T;
  std::vector<int> levels;      // budget axis size per agent (1 when unlimited)
  std::vector<int> budget;      // current budget level per agent
  std::vector<int> busy_until;  // absolute, capped at T
  std::unordered_map<std::uint64_t, double> memo;

  SeqDp(const Instance& i, const Indexer& x, const ArrivalSequence& s)
      : inst(i), idx(x), seq(s), T(i.horizon) {
    levels.resize(idx.num_agents());
    budget.resize(idx.num_agents());
    busy_until.assign(idx.num_agents(), 0);
    for (int u = 0; u < idx.num_agents(); ++u) {
      const int b = inst.agents[u].budget;
      levels[u] = is_unlimited(b) ? 1 : b + 1;
      budget[u] = is_unlimited(b) ? 0 : b;
    }
  }

  std::uint64_t key(int t) const {
    std::uint64_t k = static_cast<std::uint64_t>(t);
    for (int u = 0; u < idx.num_agents(); ++u) {
      k = k * levels[u] + budget[u];
      // busy times in the past are equivalent to "free now"
      const int rel = std::max(busy_until[u], t) - t;
      k = k * static_cast<std::uint64_t>(T + 1) + rel;
    }
    return k;
  }

  bool agent_usable(int u, int t) const {
    if (busy_until[u] > t) return false;
    if (is_unlimited(inst.agents[u].budget)) return true;
    return budget[u] > 0;
  }

  double value(int t) {
    if (t >= T) return 0.0;
    const std::uint64_t k = key(t);
    auto it = memo.find(k);
    if (it != memo.end()) return it->second;

    double best;
    const int v = seq[t];
    if (v == kNoArrival) {
      best = value(t + 1);
    } else {
      std::vector<int> cands;
      for (int e : idx.type_edges(v)) {
        const int u = idx.edge_agent(e);
        if (agent_usable(u, t)) cands.push_back(e);
      }
      best = value(t + 1);  // skipping the arrival is always allowed
      std::vector<int> chosen;
      enumerate_subsets(t, v, cands, 0, inst.task_types[v].capacity, chosen, best);
    }
    memo.emplace(k, best);
    return best;
  }

  void enumerate_subsets(int t, int v, const std::vector<int>& cands, int from, int room,
                         std::vector<int>& chosen, double& best) {
    for (int i = from; i < static_cast<int>(cands.size()); ++i) {
      chosen.push_back(cands[i]);
      best = std::max(best, outcome_expectation(t, chosen, 0, 0.0));
      if (room > 1) enumerate_subsets(t, v, cands, i + 1, room - 1, chosen, best);
      chosen.pop_back();
    }
  }

  // Expected value of assigning the chosen edges, expanding the joint
  // accept/occupation outcomes agent by agent.
  double outcome_expectation(int t, const std::vector<int>& chosen, int i, double profit) {
    if (i == static_cast<int>(chosen.size())) return profit + value(t + 1);
    const int e = chosen[i];
    const int u = idx.edge_agent(e);
    const auto& spec = inst.edges[e];
    double acc = 0.0;
    if (spec.accept_prob < 1.0) {
      const bool unlimited = is_unlimited(inst.agents[u].budget);
      if (!unlimited) --budget[u];
      acc += (1.0 - spec.accept_prob) * outcome_expectation(t, chosen, i + 1, profit);
      if (!unlimited) ++budget[u];
    }
    if (spec.accept_prob > 0.0) {
      const int saved = busy_until[u];
      for (const auto& [len, mass] : spec.occupation.masses()) {
        if (mass == 0.0) continue;
        busy_until[u] = std::min(t + len, T);
        acc += spec.accept_prob * mass *
               outcome_expectation(t, chosen, i + 1, profit + spec.weight);
      }
      busy_until[u] = saved;
    }
    return acc;
  }
};

double state_work_estimate(const Instance& inst, const Indexer& idx) {
  double states = 1.0;
  for (int u = 0; u < idx.num_agents(); ++u) {
    const int b = inst.agents[u].budget;
    const double lev = is_unlimited(b) ? 1.0 : b + 1.0;
    states *= lev * (inst.horizon + 1);
    if (states > 1e18) return states;
  }
  double max_subsets = 1.0;
  for (int v = 0; v < idx.num_types(); ++v) {
    const int n = static_cast<int>(idx.type_edges(v).size());
    const int b = std::min(inst.task_types[v].capacity, n);
    double count = 1.0;
    double binom = 1.0;
    for (int k = 1; k <= b; ++k) {
      binom = binom * (n - k + 1) / k;
      count += binom;
    }
    max_subsets = std::max(max_subsets, count);
  }
  return states * max_subsets;
}

double sequence_count(const Instance& inst) {
  double count = 1.0;
  for (int t = 0; t < inst.horizon; ++t) {
    int options = 1;
    for (const auto& row : inst.arrival.probs) {
      if (row[t] > 0.0) ++options;
    }
    count *= options;
    if (count > 1e18) return count;
  }
  return count;
}

}  // namespace

double offline_optimal_for_sequence(const Instance& inst, const Indexer& idx,
                                    const ArrivalSequence& seq, const OracleGuards& guards) {
  if (static_cast<int>(seq.size()) != inst.horizon)
    throw std::invalid_argument("sequence length does not match the horizon");
  if (state_work_estimate(inst, idx) > guards.max_state_work)
    throw std::length_error("oracle state space exceeds the guard");
  SeqDp dp(inst, idx, seq);
  return dp.value(0);
}

double expected_offline_optimal(const Instance& inst, const Indexer& idx,
                                const OracleGuards& guards) {
  if (sequence_count(inst) > guards.max_sequence_count)
    throw std::length_error("oracle sequence count exceeds the guard");
  if (state_work_estimate(inst, idx) > guards.max_state_work)
    throw std::length_error("oracle state space exceeds the guard");

  const int T = inst.horizon;
  const int V = static_cast<int>(inst.arrival.probs.size());
  ArrivalSequence seq(T, kNoArrival);
  double total = 0.0;

  // DFS over sequences with positive probability.
  auto recurse = [&](auto&& self, int t, double prob) -> void {
    if (prob == 0.0) return;
    if (t == T) {
      SeqDp dp(inst, idx, seq);
      total += prob * dp.value(0);
      return;
    }
    double none = 1.0;
    for (int v = 0; v < V; ++v) {
      const double p = inst.arrival.probs[v][t];
      none -= p;
      if (p > 0.0) {
        seq[t] = v;
        self(self, t + 1, prob * p);
      }
    }
    seq[t] = kNoArrival;
    if (none > 0.0) self(self, t + 1, prob * none);
  };
  recurse(recurse, 0, 1.0);
  return total;
}

bool oracle_admits(const Instance& inst, const Indexer& idx, const OracleGuards& guards) {
  return sequence_count(inst) <= guards.max_sequence_count &&
         state_work_estimate(inst, idx) <= guards.max_state_work;
}

}  // namespace otap
