#pragma once

#include <cstdint>
#include <vector>

#include "otap/model.hpp"

namespace otap {

enum class BudgetMode { Uniform123, Unlimited };

struct SyntheticParams {
  int n_agents = 30;
  int n_types = 100;
  int horizon = 200;
  double edge_prob = 0.1;
  int capacity = 4;  // one b for all types
  BudgetMode budget_mode = BudgetMode::Uniform123;
  bool reusable = true;  // false pins every occupation at the horizon
  bool kiid = false;
  std::uint64_t seed = 0;
};

// Random bipartite instance: edges Bernoulli(edge_prob), accept_prob
// U(0.5, 1), weight U(0, 1), occupation Binomial(20, eta_u) with the mass at
// zero moved to one and mass past the horizon collapsed onto it.
Instance gen_synthetic(const SyntheticParams& params);

// Normalizes raw frequencies into an arrival schedule. KIID mode consumes
// one weight per type (first entry of each row) and replicates the column;
// otherwise each row carries one weight per step and columns are normalized
// independently. All-zero columns stay zero.
ArrivalSchedule build_arrivals(bool kiid, const std::vector<std::vector<double>>& weights,
                               int horizon);

// Exact Binomial(n, p) probabilities for k = 0..n.
std::vector<double> binomial_pmf(int n, double p);

struct TinySweepOptions {
  enum class Mode { Mixed, AllUnlimited, FiniteBudgets, KiidNonReusable };
  Mode mode = Mode::Mixed;
  int max_agents = 5;
  int max_types = 5;
  int max_horizon = 10;
  // Shrinks everything so the enumeration oracle stays cheap.
  bool oracle_sized = false;
};

// Small random instance for verification sweeps; always validates.
Instance random_tiny_instance(std::uint64_t seed, const TinySweepOptions& opts = {});

}  // namespace otap
