#pragma once

#include <vector>

#include "otap/lp_model.hpp"

namespace otap {

struct PdhgOptions {
  double gap_tol = 1e-5;        // relative gap between repaired primal and dual bound
  long max_iterations = 400000;
  int check_every = 50;
  long restart_every = 2000;    // restart-to-average window, 0 disables
  double step_ratio = 1.0;      // primal/dual step balance
};

struct PdhgResult {
  std::vector<double> x;   // feasible after exact rescale into the polytope
  double objective = 0.0;
  double dual_bound = 0.0;  // valid upper bound on the LP optimum
  double relative_gap = 1.0;
  long iterations = 0;
  bool converged = false;
};

// Diagonally preconditioned primal-dual hybrid gradient on the packing LP.
// Uses the model's matrix-free operators only, so it scales to instances the
// dense simplex cannot hold. The returned point is always feasible: the
// iterate is clamped to its box and rescaled row-wise, which is exact for
// packing constraints.
PdhgResult solve_pdhg(const LpModel& model, const PdhgOptions& opts = {});

}  // namespace otap
