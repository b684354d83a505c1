#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "otap/lp_model.hpp"

namespace otap {

// Fractional assignment plan. x is dense, indexed edge * T + t.
struct LpSolution {
  std::vector<double> x;
  double objective = 0.0;
  double max_residual = 0.0;

  double at(int e, int t, int horizon) const { return x[e * horizon + t]; }
};

struct SolveOptions {
  enum class Method { Auto, Simplex, FirstOrder };
  Method method = Method::Auto;
  // Auto switches to the first-order solver once the dense tableau would
  // exceed this many entries.
  std::size_t simplex_max_entries = 30u * 1000u * 1000u;
  double fo_gap_tol = 1e-5;
  long fo_max_iterations = 400000;
};

struct SolveInfo {
  SolveOptions::Method used = SolveOptions::Method::Simplex;
  long iterations = 0;
  double fo_gap = 0.0;       // first-order path only
  double dual_bound = 0.0;   // valid upper bound when available
};

// Solves the offline relaxation. Throws std::runtime_error if the solver
// fails to converge; infeasibility and unboundedness cannot occur (x = 0 is
// feasible and the objective is bounded by the box bounds).
LpSolution solve_offline_lp(const LpModel& model, const SolveOptions& opts = {},
                            SolveInfo* info = nullptr);

// Replaces x by its per-edge time average. Only valid (and only accepted)
// for KIID instances with non-reusable agents, where the averaged solution
// is again optimal. Throws std::invalid_argument otherwise.
LpSolution symmetrize_kiid_solution(const LpSolution& sol, const Instance& inst,
                                    const Indexer& idx);

}  // namespace otap
