#include "otap/generator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace otap {

std::vector<double> binomial_pmf(int n, double p) {
  std::vector<double> pmf(n + 1, 0.0);
  pmf[0] = 1.0;
  // Iterative Pascal update keeps everything in [0,1] without factorials.
  for (int trial = 0; trial < n; ++trial) {
    for (int k = trial + 1; k >= 1; --k) pmf[k] = pmf[k] * (1.0 - p) + pmf[k - 1] * p;
    pmf[0] *= 1.0 - p;
  }
  return pmf;
}

namespace {

// Moves mass at 0 to 1 and mass past T onto T, then rebuilds the pmf.
OccupationPmf clamp_pmf_to_horizon(const std::vector<double>& raw, int horizon) {
  std::map<int, double> acc;
  for (int k = 0; k < static_cast<int>(raw.size()); ++k) {
    if (raw[k] <= 0.0) continue;
    acc[std::clamp(k, 1, horizon)] += raw[k];
  }
  std::vector<std::pair<int, double>> masses(acc.begin(), acc.end());
  double total = 0.0;
  for (auto& [len, m] : masses) total += m;
  for (auto& [len, m] : masses) m /= total;
  return OccupationPmf(std::move(masses));
}

int draw_budget(BudgetMode mode, Rng& rng) {
  return mode == BudgetMode::Unlimited ? kUnlimitedBudget : 1 + next_int(rng, 3);
}

}  // namespace

ArrivalSchedule build_arrivals(bool kiid, const std::vector<std::vector<double>>& weights,
                               int horizon) {
  const int V = static_cast<int>(weights.size());
  ArrivalSchedule sched;
  sched.probs.assign(V, std::vector<double>(horizon, 0.0));
  if (kiid) {
    double total = 0.0;
    for (const auto& row : weights) {
      if (row.empty()) throw std::invalid_argument("KIID weights need one entry per type");
      if (row.front() < 0.0) throw std::invalid_argument("negative arrival weight");
      total += row.front();
    }
    if (total > 0.0) {
      for (int v = 0; v < V; ++v) {
        const double p = weights[v].front() / total;
        std::fill(sched.probs[v].begin(), sched.probs[v].end(), p);
      }
    }
  } else {
    for (int t = 0; t < horizon; ++t) {
      double total = 0.0;
      for (int v = 0; v < V; ++v) {
        if (static_cast<int>(weights[v].size()) != horizon)
          throw std::invalid_argument("per-step weights need one entry per step");
        if (weights[v][t] < 0.0) throw std::invalid_argument("negative arrival weight");
        total += weights[v][t];
      }
      if (total > 0.0) {
        for (int v = 0; v < V; ++v) sched.probs[v][t] = weights[v][t] / total;
      }
    }
  }
  return sched;
}

Instance gen_synthetic(const SyntheticParams& params) {
  Rng rng = make_rng(mix64(params.seed, hash_tag("synthetic")));
  Instance inst;
  inst.horizon = params.horizon;

  std::vector<double> eta(params.n_agents);
  for (int u = 0; u < params.n_agents; ++u) {
    AgentSpec a;
    a.id = "u" + std::to_string(u);
    a.budget = draw_budget(params.budget_mode, rng);
    eta[u] = next_double(rng);
    inst.agents.push_back(std::move(a));
  }
  for (int v = 0; v < params.n_types; ++v) {
    inst.task_types.push_back({"v" + std::to_string(v), params.capacity});
  }
  for (int u = 0; u < params.n_agents; ++u) {
    for (int v = 0; v < params.n_types; ++v) {
      if (next_double(rng) >= params.edge_prob) continue;
      EdgeSpec e;
      e.agent = inst.agents[u].id;
      e.type = inst.task_types[v].id;
      e.accept_prob = next_uniform(rng, 0.5, 1.0);
      e.weight = next_double(rng);
      e.occupation = params.reusable
                         ? clamp_pmf_to_horizon(binomial_pmf(20, eta[u]), params.horizon)
                         : OccupationPmf::point_mass(params.horizon);
      inst.edges.push_back(std::move(e));
    }
  }

  std::vector<std::vector<double>> weights(params.n_types);
  if (params.kiid) {
    for (auto& row : weights) row.push_back(next_double(rng));
  } else {
    for (auto& row : weights) {
      row.resize(params.horizon);
      for (double& w : row) w = next_double(rng);
    }
  }
  inst.arrival = build_arrivals(params.kiid, weights, params.horizon);
  return inst;
}

Instance random_tiny_instance(std::uint64_t seed, const TinySweepOptions& opts) {
  Rng rng = make_rng(mix64(seed, hash_tag("tiny-sweep")));
  using Mode = TinySweepOptions::Mode;

  const int max_u = opts.oracle_sized ? 2 : opts.max_agents;
  const int max_v = opts.oracle_sized ? 2 : opts.max_types;
  const int max_t = opts.oracle_sized ? 4 : opts.max_horizon;
  const int U = 1 + next_int(rng, max_u);
  const int V = 1 + next_int(rng, max_v);
  const int T = 1 + next_int(rng, max_t);
  const bool kiid = opts.mode == Mode::KiidNonReusable || next_double(rng) < 0.3;
  const bool non_reusable = opts.mode == Mode::KiidNonReusable || next_double(rng) < 0.3;

  Instance inst;
  inst.horizon = T;
  for (int u = 0; u < U; ++u) {
    AgentSpec a;
    a.id = "u" + std::to_string(u);
    switch (opts.mode) {
      case Mode::AllUnlimited:
        a.budget = kUnlimitedBudget;
        break;
      case Mode::FiniteBudgets:
        a.budget = 1 + next_int(rng, opts.oracle_sized ? 2 : 3);
        break;
      default:
        a.budget = next_double(rng) < 0.3 ? kUnlimitedBudget
                                          : 1 + next_int(rng, opts.oracle_sized ? 2 : 3);
        break;
    }
    inst.agents.push_back(std::move(a));
  }
  for (int v = 0; v < V; ++v) {
    inst.task_types.push_back({"v" + std::to_string(v), 1 + next_int(rng, 3)});
  }

  for (int u = 0; u < U; ++u) {
    for (int v = 0; v < V; ++v) {
      if (next_double(rng) >= 0.6) continue;
      EdgeSpec e;
      e.agent = inst.agents[u].id;
      e.type = inst.task_types[v].id;
      e.accept_prob = next_double(rng) < 0.15 ? 1.0 : next_uniform(rng, 0.3, 1.0);
      e.weight = next_double(rng) < 0.1 ? 0.0 : next_double(rng);
      if (non_reusable) {
        e.occupation = OccupationPmf::point_mass(T);
      } else {
        const int supp = 1 + next_int(rng, std::min(3, T));
        std::vector<int> lens;
        while (static_cast<int>(lens.size()) < supp) {
          const int len = 1 + next_int(rng, T);
          if (std::find(lens.begin(), lens.end(), len) == lens.end()) lens.push_back(len);
        }
        std::sort(lens.begin(), lens.end());
        std::vector<std::pair<int, double>> masses;
        double total = 0.0;
        for (int len : lens) {
          const double m = 0.05 + next_double(rng);
          masses.emplace_back(len, m);
          total += m;
        }
        for (auto& [len, m] : masses) m /= total;
        e.occupation = OccupationPmf(std::move(masses));
      }
      inst.edges.push_back(std::move(e));
    }
  }

  std::vector<std::vector<double>> weights(V);
  if (kiid) {
    for (auto& row : weights) row.push_back(next_double(rng));
  } else {
    for (auto& row : weights) {
      row.resize(T);
      for (double& w : row) w = next_double(rng);
    }
  }
  inst.arrival = build_arrivals(kiid, weights, T);
  // Leave some no-arrival mass; a common factor keeps KIID columns identical.
  const double shrink = next_uniform(rng, 0.5, 1.0);
  for (auto& row : inst.arrival.probs) {
    for (double& p : row) p *= shrink;
  }
  return inst;
}

}  // namespace otap
