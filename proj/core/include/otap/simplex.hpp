#pragma once

#include <limits>
#include <vector>

#include "otap/lp_model.hpp"

namespace otap {

// A small LP in packing-friendly form: max c.x, A x <= b with b >= 0,
// 0 <= x <= upper (entries may be +inf).
struct BoundedLp {
  std::vector<double> c;
  std::vector<double> upper;
  std::vector<std::vector<std::pair<int, double>>> rows;
  std::vector<double> rhs;

  int num_vars() const { return static_cast<int>(c.size()); }
  int num_rows() const { return static_cast<int>(rhs.size()); }

  static BoundedLp from_model(const LpModel& model);
};

enum class SimplexStatus { Optimal, IterationLimit, Unbounded };

struct SimplexResult {
  SimplexStatus status = SimplexStatus::Optimal;
  std::vector<double> x;
  double objective = 0.0;
  std::vector<double> duals;  // one multiplier per row, >= 0
  long iterations = 0;
};

struct SimplexOptions {
  double tol = 1e-9;
  long max_iterations = 0;       // 0 = automatic
  long stall_before_bland = 500;  // switch to Bland's rule after this many degenerate steps
};

// Dense tableau simplex with upper-bounded variables. The all-slack basis is
// feasible because every rhs is nonnegative, so there is no phase 1.
SimplexResult solve_bounded_simplex(const BoundedLp& lp, const SimplexOptions& opts = {});

}  // namespace otap
