#include "otap/pdhg.hpp"

#include <algorithm>
#include <cmath>

namespace otap {

namespace {

// Valid dual bound for any y >= 0:
//   c.x <= b.y + sum_j upper_j * max(0, c_j - (A^T y)_j).
double dual_bound(const LpModel& m, const std::vector<double>& aty) {
  const auto& c = m.objective();
  const auto& u = m.upper_bounds();
  double acc = 0.0;
  for (int j = 0; j < m.num_vars(); ++j) acc += u[j] * std::max(0.0, c[j] - aty[j]);
  return acc;
}

}  // namespace

PdhgResult solve_pdhg(const LpModel& model, const PdhgOptions& opts) {
  const int n = model.num_vars();
  const int m = model.num_rows();
  const auto& c = model.objective();
  const auto& u = model.upper_bounds();
  const auto& b = model.rhs();

  // Diagonal step sizes from row/column absolute sums (all coefficients are
  // nonnegative, so plain matvecs with the ones vector give them).
  std::vector<double> tau(n), sigma(m);
  {
    std::vector<double> ones_n(n, 1.0), ones_m(m, 1.0), colsum, rowsum;
    model.apply_transpose(ones_m, colsum);
    model.apply(ones_n, rowsum);
    for (int j = 0; j < n; ++j)
      tau[j] = colsum[j] > 0.0 ? opts.step_ratio / colsum[j] : 1.0;
    for (int i = 0; i < m; ++i)
      sigma[i] = rowsum[i] > 0.0 ? 1.0 / (opts.step_ratio * rowsum[i]) : 0.0;
  }

  std::vector<double> x(n, 0.0), y(m, 0.0);
  std::vector<double> xbar(n), aty, ax;
  std::vector<double> xsum(n, 0.0), ysum(m, 0.0);
  long window = 0;

  PdhgResult best;
  best.x.assign(n, 0.0);
  best.objective = 0.0;

  auto evaluate = [&](const std::vector<double>& xc, const std::vector<double>& yc,
                      PdhgResult& out) {
    std::vector<double> repaired = xc;
    model.project_into_polytope(repaired);
    const double primal = model.objective_value(repaired);
    model.apply_transpose(yc, aty);
    double dual = 0.0;
    for (int i = 0; i < m; ++i) dual += b[i] * yc[i];
    dual += dual_bound(model, aty);
    const double gap = (dual - primal) / std::max({1.0, std::abs(primal), std::abs(dual)});
    if (primal > out.objective || out.x.empty()) {
      out.x = std::move(repaired);
      out.objective = primal;
    }
    out.dual_bound = out.dual_bound == 0.0 ? dual : std::min(out.dual_bound, dual);
    return gap;
  };

  long it = 0;
  for (; it < opts.max_iterations; ++it) {
    model.apply_transpose(y, aty);
    for (int j = 0; j < n; ++j) {
      const double next = std::clamp(x[j] - tau[j] * (aty[j] - c[j]), 0.0, u[j]);
      xbar[j] = 2.0 * next - x[j];
      x[j] = next;
    }
    model.apply(xbar, ax);
    for (int i = 0; i < m; ++i) y[i] = std::max(0.0, y[i] + sigma[i] * (ax[i] - b[i]));

    for (int j = 0; j < n; ++j) xsum[j] += x[j];
    for (int i = 0; i < m; ++i) ysum[i] += y[i];
    ++window;

    if ((it + 1) % opts.check_every == 0) {
      const double gap = evaluate(x, y, best);
      best.relative_gap = std::min(best.relative_gap, std::max(gap, 0.0));
      // Re-derive the gap against the running best bound; the pair
      // (best primal, best dual) is what the caller consumes.
      const double agg_gap = (best.dual_bound - best.objective) /
                             std::max({1.0, best.objective, best.dual_bound});
      if (agg_gap <= opts.gap_tol) {
        best.converged = true;
        best.relative_gap = std::max(agg_gap, 0.0);
        ++it;
        break;
      }
    }
    if (opts.restart_every > 0 && window >= opts.restart_every) {
      for (int j = 0; j < n; ++j) x[j] = xsum[j] / window;
      for (int i = 0; i < m; ++i) y[i] = ysum[i] / window;
      std::fill(xsum.begin(), xsum.end(), 0.0);
      std::fill(ysum.begin(), ysum.end(), 0.0);
      window = 0;
    }
  }
  if (!best.converged) {
    const double gap = evaluate(x, y, best);
    best.relative_gap =
        std::max(0.0, (best.dual_bound - best.objective) /
                          std::max({1.0, best.objective, best.dual_bound}));
    (void)gap;
    best.converged = best.relative_gap <= opts.gap_tol;
  }
  best.iterations = it;
  return best;
}

}  // namespace otap
