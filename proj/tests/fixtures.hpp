#pragma once

// Hand-checkable instances used across the test suites. All expected values
// asserted against these were derived by hand from the closed-form solutions
// of the corresponding tiny LPs and recursions.

#include "otap/model.hpp"

namespace otap::fixtures {

// One agent with two rejections, two steps. At t=1 a weight-1 task with
// acceptance 2/3, at t=2 a weight-M task with acceptance 1/3; occupation
// always lasts both steps. The relaxation has the unique optimum x = (1, 1)
// with objective (M+2)/3, the best policy skips t=1 and collects M/3.
inline Instance two_step_skip_trap(double big_weight = 100.0) {
  Instance inst;
  inst.horizon = 2;
  inst.agents = {{"u", 2}};
  inst.task_types = {{"v1", 1}, {"v2", 1}};
  inst.edges = {
      {"u", "v1", 1.0, 2.0 / 3.0, OccupationPmf::point_mass(2)},
      {"u", "v2", big_weight, 1.0 / 3.0, OccupationPmf::point_mass(2)},
  };
  inst.arrival.probs = {{1.0, 0.0}, {0.0, 1.0}};
  return inst;
}

// One agent with a single rejection, three steps, coin-flip occupations.
// The third task is rare (prob eps) but pays 4/(9 eps); the offline optimum
// is (7-3eps)/9 while the relaxation peaks at (8-4eps)/9.
inline Instance three_step_budget_one(double eps) {
  Instance inst;
  inst.horizon = 3;
  inst.agents = {{"u", 1}};
  inst.task_types = {{"v1", 1}, {"v2", 1}, {"v3", 1}};
  OccupationPmf coin({{1, 0.5}, {2, 0.5}});
  inst.edges = {
      {"u", "v1", 4.0 / 9.0, 0.5, coin},
      {"u", "v2", 6.0 / 9.0, 0.5, coin},
      {"u", "v3", 4.0 / (9.0 * eps), 1.0, coin},
  };
  inst.arrival.probs = {{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, eps}};
  return inst;
}

// One agent with a single rejection and a reusable occupation of three
// steps; the task arrives with probability 3/4 in the first three of six
// steps (weight 1, acceptance 1/2). The relaxation reaches objective 1 at
// x = (3/4, 3/4, 1/2), but the adaptive policy only collects
// R_1 = 31/64 < 1/2: backward induction gives R_3 = 1/4, R_2 = 7/16,
// R_1 = 31/64. The single-budget factor-revealing certificate is infeasible
// here (its beta_4 = -5/16), so this pins the case where the relaxation
// overshoots the budget across overlapping prefixes.
inline Instance reusable_budget_trap() {
  Instance inst;
  inst.horizon = 6;
  inst.agents = {{"u", 1}};
  inst.task_types = {{"v", 1}};
  inst.edges = {{"u", "v", 1.0, 0.5, OccupationPmf::point_mass(3)}};
  inst.arrival.probs = {{0.75, 0.75, 0.75, 0.0, 0.0, 0.0}};
  return inst;
}

// An optimal plan for reusable_budget_trap(), pinned so the derived numbers
// do not depend on which vertex a solver happens to return.
inline std::vector<double> reusable_budget_trap_plan() {
  std::vector<double> x(6, 0.0);
  x[0] = 0.75;
  x[1] = 0.75;
  x[2] = 0.5;
  return x;
}

// Prophet-style two-step instance with deterministic acceptance: a safe
// weight-1 task now versus a rare weight-1/eps task later. E[OPT] = 2 - eps
// while no online policy beats 1.
inline Instance prophet_pair(double eps, int budget = kUnlimitedBudget) {
  Instance inst;
  inst.horizon = 2;
  inst.agents = {{"u", budget}};
  inst.task_types = {{"a", 1}, {"b", 1}, {"c", 1}};
  inst.edges = {
      {"u", "a", 1.0, 1.0, OccupationPmf::point_mass(2)},
      {"u", "b", 1.0 / eps, 1.0, OccupationPmf::point_mass(2)},
      {"u", "c", 0.0, 1.0, OccupationPmf::point_mass(2)},
  };
  inst.arrival.probs = {{1.0, 0.0}, {0.0, eps}, {0.0, 1.0 - eps}};
  return inst;
}

}  // namespace otap::fixtures
