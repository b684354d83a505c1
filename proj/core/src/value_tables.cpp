#include "otap/value_tables.hpp"

#include <algorithm>
#include <stdexcept>

namespace otap {

double ValueTables::AgentTable::r_at(int d, int t, int horizon) const {
  if (t >= horizon) return 0.0;
  if (is_unlimited(budget)) return r[t];
  if (d <= 0) return 0.0;
  const int level = std::min(d, budget);
  return r[static_cast<std::size_t>(level) * (horizon + 1) + t];
}

double ValueTables::AgentTable::q_at(int d, int local, int t, int horizon) const {
  const int row = is_unlimited(budget) ? 0 : std::min(d, budget) - 1;
  return q[(static_cast<std::size_t>(row) * edges.size() + local) * horizon + t];
}

int ValueTables::AgentTable::local_edge(int edge) const {
  auto it = std::lower_bound(edges.begin(), edges.end(), edge);
  if (it == edges.end() || *it != edge) return -1;
  return static_cast<int>(it - edges.begin());
}

double ValueTables::total_initial_value() const {
  double acc = 0.0;
  for (const auto& a : agents) acc += a.r_at(a.budget, 0, horizon);
  return acc;
}

ValueTables compute_value_tables(const Instance& inst, const Indexer& idx,
                                 const LpSolution& sol) {
  const int T = inst.horizon;
  ValueTables out;
  out.horizon = T;
  out.agents.resize(idx.num_agents());

  for (int u = 0; u < idx.num_agents(); ++u) {
    auto& tab = out.agents[u];
    tab.budget = inst.agents[u].budget;
    tab.edges = idx.agent_edges(u);
    std::sort(tab.edges.begin(), tab.edges.end());
    const int ne = static_cast<int>(tab.edges.size());
    const bool unlimited = is_unlimited(tab.budget);
    tab.levels = unlimited ? 1 : tab.budget + 1;
    tab.qlevels = unlimited ? 1 : tab.budget;
    tab.r.assign(static_cast<std::size_t>(tab.levels) * (T + 1), 0.0);
    tab.q.assign(static_cast<std::size_t>(tab.qlevels) * ne * T, 0.0);

    auto r_cell = [&](int level, int t) -> double& {
      return tab.r[static_cast<std::size_t>(level) * (T + 1) + t];
    };
    auto q_cell = [&](int qrow, int le, int t) -> double& {
      return tab.q[(static_cast<std::size_t>(qrow) * ne + le) * T + t];
    };

    for (int t = T - 1; t >= 0; --t) {
      // Level 0 stays zero; unlimited has the single level.
      for (int level = unlimited ? 0 : 1; level < tab.levels; ++level) {
        const double cont = r_cell(level, t + 1);
        double sum_x = 0.0;
        double acc = 0.0;
        for (int le = 0; le < ne; ++le) {
          const int e = tab.edges[le];
          const auto& spec = inst.edges[e];
          const double x = sol.x[static_cast<std::size_t>(e) * T + t];
          double future = 0.0;
          for (const auto& [len, mass] : spec.occupation.masses()) {
            if (t + len < T) future += mass * r_cell(level, t + len);
          }
          const double down =
              unlimited ? cont : (level >= 2 ? r_cell(level - 1, t + 1) : 0.0);
          const double qval =
              spec.accept_prob * (spec.weight + future) + (1.0 - spec.accept_prob) * down;
          q_cell(unlimited ? 0 : level - 1, le, t) = qval;
          sum_x += x;
          acc += x * std::max(qval, cont);
        }
        acc += (1.0 - sum_x) * cont;
        r_cell(level, t) = acc;
      }
    }
  }
  return out;
}

Decision decide_assignment(const ValueTables& tables, int agent, int edge, int t, int d) {
  if (d == 0)
    throw std::invalid_argument("decide_assignment called with exhausted budget");
  const auto& tab = tables.agents[agent];
  const int local = tab.local_edge(edge);
  if (local < 0) throw std::invalid_argument("edge is not incident to the agent");
  const double qval = tab.q_at(d, local, t, tables.horizon);
  const double wait = tab.r_at(d, t + 1, tables.horizon);
  return qval >= wait ? Decision::Assign : Decision::Skip;
}

}  // namespace otap
