#pragma once

#include <vector>

#include "otap/lp_offline.hpp"
#include "otap/model.hpp"

namespace otap {

// Backward-induction value tables driven by an LP solution. r holds the
// expected profit an agent collects from step t on with d rejections left;
// q holds the assign-branch value per incident edge. Values for t past the
// horizon and for d = 0 are zero.
struct ValueTables {
  struct AgentTable {
    int budget = 1;             // kUnlimitedBudget for the single-layer case
    std::vector<int> edges;     // global edge ids, ascending
    int levels = 1;             // rows in r: budget+1, or 1 when unlimited
    int qlevels = 1;            // rows in q: budget, or 1 when unlimited
    std::vector<double> r;      // levels x (T+1)
    std::vector<double> q;      // qlevels x |edges| x T

    double r_at(int d, int t, int horizon) const;
    double q_at(int d, int local_edge, int t, int horizon) const;
    int local_edge(int edge) const;  // -1 when absent
  };

  int horizon = 0;
  std::vector<AgentTable> agents;

  double r_at(int agent, int d, int t) const { return agents[agent].r_at(d, t, horizon); }
  double q_at(int agent, int d, int local_edge, int t) const {
    return agents[agent].q_at(d, local_edge, t, horizon);
  }
  // Sum over agents of the full-budget value at t = 0; equals the proposed
  // policy's expected total profit.
  double total_initial_value() const;
};

ValueTables compute_value_tables(const Instance& inst, const Indexer& idx,
                                 const LpSolution& sol);

enum class Decision { Assign, Skip };

// Assign iff the assign-branch value weakly dominates waiting. d is the
// agent's remaining budget (kUnlimitedBudget allowed); d = 0 queries throw.
Decision decide_assignment(const ValueTables& tables, int agent, int edge, int t, int d);

}  // namespace otap
