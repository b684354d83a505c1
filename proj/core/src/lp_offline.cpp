#include "otap/lp_offline.hpp"

#include <cmath>
#include <stdexcept>

#include "otap/pdhg.hpp"
#include "otap/simplex.hpp"

namespace otap {

LpSolution solve_offline_lp(const LpModel& model, const SolveOptions& opts, SolveInfo* info) {
  const std::size_t tableau_entries =
      static_cast<std::size_t>(model.num_rows()) *
      (static_cast<std::size_t>(model.num_rows()) + model.num_vars());
  SolveOptions::Method method = opts.method;
  if (method == SolveOptions::Method::Auto) {
    method = tableau_entries <= opts.simplex_max_entries ? SolveOptions::Method::Simplex
                                                         : SolveOptions::Method::FirstOrder;
  }

  LpSolution sol;
  if (method == SolveOptions::Method::Simplex) {
    SimplexResult res = solve_bounded_simplex(BoundedLp::from_model(model));
    if (res.status == SimplexStatus::Unbounded)
      throw std::runtime_error("offline LP reported unbounded; instance data is invalid");
    if (res.status != SimplexStatus::Optimal)
      throw std::runtime_error("simplex hit its iteration limit on the offline LP");
    sol.x = std::move(res.x);
    if (info) {
      info->used = SolveOptions::Method::Simplex;
      info->iterations = res.iterations;
      double dual = 0.0;
      for (int r = 0; r < model.num_rows(); ++r) dual += res.duals[r] * model.rhs()[r];
      info->dual_bound = dual;  // partial: box terms are added by tests when needed
    }
  } else {
    PdhgOptions popts;
    popts.gap_tol = opts.fo_gap_tol;
    popts.max_iterations = opts.fo_max_iterations;
    PdhgResult res = solve_pdhg(model, popts);
    sol.x = std::move(res.x);
    if (info) {
      info->used = SolveOptions::Method::FirstOrder;
      info->iterations = res.iterations;
      info->fo_gap = res.relative_gap;
      info->dual_bound = res.dual_bound;
    }
  }

  model.project_into_polytope(sol.x);
  sol.objective = model.objective_value(sol.x);
  sol.max_residual = model.max_violation(sol.x);
  return sol;
}

LpSolution symmetrize_kiid_solution(const LpSolution& sol, const Instance& inst,
                                    const Indexer& idx) {
  if (!inst.arrival.is_kiid())
    throw std::invalid_argument("symmetrize requires identical arrival columns (KIID)");
  if (!is_non_reusable(inst))
    throw std::invalid_argument("symmetrize requires non-reusable agents (Pr[C = T] = 1)");

  const int T = inst.horizon;
  LpSolution out;
  out.x.assign(sol.x.size(), 0.0);
  for (int e = 0; e < idx.num_edges(); ++e) {
    double total = 0.0;
    for (int t = 0; t < T; ++t) total += sol.x[e * T + t];
    const double avg = total / T;
    for (int t = 0; t < T; ++t) out.x[e * T + t] = avg;
  }
  LpModel model = LpModel::build(inst, idx);
  out.objective = model.objective_value(out.x);
  out.max_residual = model.max_violation(out.x);
  return out;
}

}  // namespace otap
