#include "otap/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace otap {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class VarStatus : unsigned char { AtLower, AtUpper, Basic };

}  // namespace

BoundedLp BoundedLp::from_model(const LpModel& model) {
  BoundedLp lp;
  lp.c = model.objective();
  lp.upper = model.upper_bounds();
  lp.rhs = model.rhs();
  lp.rows.resize(model.num_rows());
  for (int r = 0; r < model.num_rows(); ++r) model.row(r, lp.rows[r]);
  return lp;
}

SimplexResult solve_bounded_simplex(const BoundedLp& lp, const SimplexOptions& opts) {
  const int n = lp.num_vars();
  const int m = lp.num_rows();
  const int total = n + m;  // structurals then slacks
  const double tol = opts.tol;

  for (double b : lp.rhs) {
    if (b < 0.0) throw std::invalid_argument("simplex expects nonnegative rhs");
  }
  const std::size_t entries = static_cast<std::size_t>(m) * total;
  if (entries > 400u * 1000u * 1000u)
    throw std::length_error("LP too large for the dense simplex path");

  // Row-major tableau holding B^-1 [A I].
  std::vector<double> tab(entries, 0.0);
  auto row = [&](int i) { return tab.data() + static_cast<std::size_t>(i) * total; };
  for (int i = 0; i < m; ++i) {
    for (const auto& [j, a] : lp.rows[i]) row(i)[j] += a;
    row(i)[n + i] = 1.0;
  }

  std::vector<double> rc(total, 0.0);  // reduced costs (maximization)
  for (int j = 0; j < n; ++j) rc[j] = lp.c[j];

  std::vector<VarStatus> status(total, VarStatus::AtLower);
  std::vector<int> basic(m);
  std::vector<int> basic_row(total, -1);
  for (int i = 0; i < m; ++i) {
    basic[i] = n + i;
    basic_row[n + i] = i;
    status[n + i] = VarStatus::Basic;
  }
  std::vector<double> xb(lp.rhs);  // basic values

  auto upper_of = [&](int j) { return j < n ? lp.upper[j] : kInf; };

  const long max_iters =
      opts.max_iterations > 0 ? opts.max_iterations : 2000L + 200L * static_cast<long>(total);

  SimplexResult res;
  bool bland = false;
  long stall = 0;

  for (res.iterations = 0; res.iterations < max_iters; ++res.iterations) {
    // Entering variable: Dantzig by default, Bland once degeneracy stalls.
    int enter = -1;
    int dir = 0;
    double best = tol;
    for (int j = 0; j < total; ++j) {
      if (status[j] == VarStatus::Basic) continue;
      const double d = rc[j];
      double gain = 0.0;
      int jdir = 0;
      if (status[j] == VarStatus::AtLower && d > tol && upper_of(j) > 0.0) {
        gain = d;
        jdir = 1;
      } else if (status[j] == VarStatus::AtUpper && d < -tol) {
        gain = -d;
        jdir = -1;
      } else {
        continue;
      }
      if (bland) {
        enter = j;
        dir = jdir;
        break;
      }
      if (gain > best) {
        best = gain;
        enter = j;
        dir = jdir;
      }
    }
    if (enter < 0) {
      res.status = SimplexStatus::Optimal;
      break;
    }

    // Ratio test: entering moves by theta in direction dir; basic variable i
    // changes at rate -dir * tab[i][enter].
    double theta = upper_of(enter);  // bound-to-bound flip
    int leave_row = -1;
    bool leave_to_upper = false;
    for (int i = 0; i < m; ++i) {
      const double d = dir * row(i)[enter];
      if (d > 1e-11) {
        const double limit = xb[i] / d;
        if (limit < theta - 1e-12 ||
            (limit < theta + 1e-12 && leave_row >= 0 && basic[i] < basic[leave_row])) {
          theta = limit;
          leave_row = i;
          leave_to_upper = false;
        }
      } else if (d < -1e-11) {
        const double ub = upper_of(basic[i]);
        if (ub == kInf) continue;
        const double limit = (ub - xb[i]) / (-d);
        if (limit < theta - 1e-12 ||
            (limit < theta + 1e-12 && leave_row >= 0 && basic[i] < basic[leave_row])) {
          theta = limit;
          leave_row = i;
          leave_to_upper = true;
        }
      }
    }
    if (theta == kInf) {
      res.status = SimplexStatus::Unbounded;
      break;
    }
    theta = std::max(theta, 0.0);
    if (theta < 1e-12) {
      if (++stall > opts.stall_before_bland) bland = true;
    } else {
      stall = 0;
    }

    for (int i = 0; i < m; ++i) xb[i] -= dir * theta * row(i)[enter];

    if (leave_row < 0) {
      // Bound flip, basis unchanged.
      status[enter] = (dir > 0) ? VarStatus::AtUpper : VarStatus::AtLower;
      continue;
    }

    const int leave = basic[leave_row];
    const double pivot = row(leave_row)[enter];
    // Value of the entering variable after the move.
    xb[leave_row] = (dir > 0) ? theta : upper_of(enter) - theta;

    double* prow = row(leave_row);
    const double inv = 1.0 / pivot;
    for (int j = 0; j < total; ++j) prow[j] *= inv;
    for (int i = 0; i < m; ++i) {
      if (i == leave_row) continue;
      double* r = row(i);
      const double f = r[enter];
      if (f == 0.0) continue;
      for (int j = 0; j < total; ++j) r[j] -= f * prow[j];
      r[enter] = 0.0;
    }
    {
      const double f = rc[enter];
      if (f != 0.0) {
        for (int j = 0; j < total; ++j) rc[j] -= f * prow[j];
        rc[enter] = 0.0;
      }
    }

    status[enter] = VarStatus::Basic;
    status[leave] = leave_to_upper ? VarStatus::AtUpper : VarStatus::AtLower;
    basic[leave_row] = enter;
    basic_row[enter] = leave_row;
    basic_row[leave] = -1;
  }
  if (res.iterations >= max_iters) res.status = SimplexStatus::IterationLimit;

  res.x.assign(n, 0.0);
  for (int j = 0; j < n; ++j) {
    switch (status[j]) {
      case VarStatus::AtLower: res.x[j] = 0.0; break;
      case VarStatus::AtUpper: res.x[j] = lp.upper[j]; break;
      case VarStatus::Basic: res.x[j] = std::max(0.0, xb[basic_row[j]]); break;
    }
  }
  res.objective = 0.0;
  for (int j = 0; j < n; ++j) res.objective += lp.c[j] * res.x[j];
  res.duals.assign(m, 0.0);
  for (int i = 0; i < m; ++i) res.duals[i] = std::max(0.0, -rc[n + i]);
  return res;
}

}  // namespace otap
