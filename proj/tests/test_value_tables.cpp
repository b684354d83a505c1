#include <doctest.h>

#include <stdexcept>

#include "fixtures.hpp"
#include "otap/generator.hpp"
#include "otap/lp_model.hpp"
#include "otap/value_tables.hpp"

using namespace otap;

namespace {

struct Solved {
  Instance inst;
  Indexer idx;
  LpSolution sol;
  ValueTables tables;

  explicit Solved(Instance i)
      : inst(std::move(i)),
        idx(inst),
        sol(solve_offline_lp(LpModel::build(inst, idx))),
        tables(compute_value_tables(inst, idx, sol)) {}
};

}  // namespace

TEST_CASE("two-step fixture value table") {
  const double M = 100.0;
  Solved s(fixtures::two_step_skip_trap(M));
  const auto& tab = s.tables;

  // Waiting value at the second step is M/3 for any remaining budget.
  CHECK(tab.r_at(0, 1, 1) == doctest::Approx(M / 3.0));
  CHECK(tab.r_at(0, 2, 1) == doctest::Approx(M / 3.0));
  // Assign-branch value of the first task: (2/3)*1 + (1/3)*(M/3).
  const int local0 = tab.agents[0].local_edge(0);
  CHECK(tab.q_at(0, 2, local0, 0) == doctest::Approx((M + 6.0) / 9.0));
  // Skipping the first task wins.
  CHECK(tab.r_at(0, 2, 0) == doctest::Approx(M / 3.0));
  CHECK(tab.total_initial_value() == doctest::Approx(M / 3.0));

  CHECK(decide_assignment(tab, 0, 0, 0, 2) == Decision::Skip);
  CHECK(decide_assignment(tab, 0, 1, 1, 2) == Decision::Assign);
  CHECK(decide_assignment(tab, 0, 1, 1, 1) == Decision::Assign);
}

TEST_CASE("zero budget rows are zero and queries throw") {
  Solved s(fixtures::two_step_skip_trap(50.0));
  CHECK(s.tables.r_at(0, 0, 0) == 0.0);
  CHECK(s.tables.r_at(0, 0, 1) == 0.0);
  CHECK_THROWS_AS(decide_assignment(s.tables, 0, 0, 0, 0), std::invalid_argument);
}

TEST_CASE("prophet fixture ties assign") {
  Solved s(fixtures::prophet_pair(0.1));
  const auto& tab = s.tables;
  CHECK(tab.r_at(0, kUnlimitedBudget, 1) == doctest::Approx(1.0));
  const int local_a = tab.agents[0].local_edge(0);
  CHECK(tab.q_at(0, kUnlimitedBudget, local_a, 0) == doctest::Approx(1.0));
  CHECK(tab.r_at(0, kUnlimitedBudget, 0) == doctest::Approx(1.0));
  CHECK(tab.total_initial_value() == doctest::Approx(1.0));
  // Q == R: the tie assigns.
  CHECK(decide_assignment(tab, 0, 0, 0, kUnlimitedBudget) == Decision::Assign);
}

TEST_CASE("values vanish past the horizon") {
  Solved s(fixtures::two_step_skip_trap(10.0));
  CHECK(s.tables.r_at(0, 2, 2) == 0.0);
  CHECK(s.tables.r_at(0, 2, 5) == 0.0);
}

TEST_CASE("time monotonicity and base row across random instances") {
  for (std::uint64_t seed = 100; seed < 140; ++seed) {
    Solved s(normalize_instance(random_tiny_instance(seed)));
    const int T = s.inst.horizon;
    for (int u = 0; u < s.idx.num_agents(); ++u) {
      const auto& tab = s.tables.agents[u];
      const int dmax = is_unlimited(tab.budget) ? 1 : tab.budget;
      double base = 0.0;
      for (int e : tab.edges) {
        base += s.sol.x[static_cast<std::size_t>(e) * T + (T - 1)] *
                s.inst.edges[e].accept_prob * s.inst.edges[e].weight;
      }
      for (int pass = 1; pass <= dmax; ++pass) {
        const int d = is_unlimited(tab.budget) ? kUnlimitedBudget : pass;
        for (int t = 0; t < T; ++t) {
          CHECK(s.tables.r_at(u, d, t) >= s.tables.r_at(u, d, t + 1) - 1e-9);
          CHECK(s.tables.r_at(u, d, t) >= 0.0);
        }
        CHECK(s.tables.r_at(u, d, T - 1) == doctest::Approx(base).epsilon(1e-12));
        if (is_unlimited(tab.budget)) break;
      }
    }
  }
}

TEST_CASE("stored recursion re-evaluates to itself") {
  for (std::uint64_t seed = 300; seed < 320; ++seed) {
    Solved s(normalize_instance(random_tiny_instance(seed)));
    const int T = s.inst.horizon;
    for (int u = 0; u < s.idx.num_agents(); ++u) {
      const auto& tab = s.tables.agents[u];
      const int dmax = is_unlimited(tab.budget) ? 1 : tab.budget;
      for (int pass = 1; pass <= dmax; ++pass) {
        const int d = is_unlimited(tab.budget) ? kUnlimitedBudget : pass;
        for (int t = 0; t < T; ++t) {
          double sum_x = 0.0, acc = 0.0;
          const double cont = s.tables.r_at(u, d, t + 1);
          for (std::size_t le = 0; le < tab.edges.size(); ++le) {
            const double x = s.sol.x[static_cast<std::size_t>(tab.edges[le]) * T + t];
            sum_x += x;
            acc += x * std::max(s.tables.q_at(u, d, static_cast<int>(le), t), cont);
          }
          acc += (1.0 - sum_x) * cont;
          CHECK(std::abs(acc - s.tables.r_at(u, d, t)) <= 1e-12);
        }
        if (is_unlimited(tab.budget)) break;
      }
    }
  }
}
