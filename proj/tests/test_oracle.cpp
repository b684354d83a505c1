#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "fixtures.hpp"
#include "otap/generator.hpp"
#include "otap/lp_model.hpp"
#include "otap/oracle.hpp"
#include "otap/simulator.hpp"

using namespace otap;

TEST_CASE("prophet fixture sequence values") {
  const Instance inst = fixtures::prophet_pair(0.1);
  const Indexer idx(inst);
  // b shows up: skip a, take b.
  CHECK(offline_optimal_for_sequence(inst, idx, {0, 1}) == doctest::Approx(10.0).epsilon(1e-12));
  // only c shows up: take a.
  CHECK(offline_optimal_for_sequence(inst, idx, {0, 2}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(expected_offline_optimal(inst, idx) == doctest::Approx(1.9).epsilon(1e-12));
}

TEST_CASE("three-step fixture matches the hand calculation") {
  for (double eps : {0.1, 0.01}) {
    const Instance inst = fixtures::three_step_budget_one(eps);
    const Indexer idx(inst);
    // Without the rare task the best play skips the first arrival: 1/3.
    CHECK(offline_optimal_for_sequence(inst, idx, {0, 1, kNoArrival}) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(expected_offline_optimal(inst, idx) ==
          doctest::Approx((7.0 - 3.0 * eps) / 9.0).epsilon(1e-12));
  }
}

TEST_CASE("two-step fixture expected optimum is M/3") {
  const double M = 100.0;
  const Instance inst = fixtures::two_step_skip_trap(M);
  const Indexer idx(inst);
  CHECK(expected_offline_optimal(inst, idx) == doctest::Approx(M / 3.0).epsilon(1e-12));
}

TEST_CASE("guards reject oversized instances") {
  SyntheticParams p;
  p.n_agents = 8;
  p.n_types = 6;
  p.horizon = 30;
  p.edge_prob = 0.8;
  p.seed = 3;
  const Instance inst = gen_synthetic(p);
  const Indexer idx(inst);
  CHECK(!oracle_admits(inst, idx));
  CHECK_THROWS_AS(expected_offline_optimal(inst, idx), std::length_error);
  CHECK_THROWS_AS(offline_optimal_for_sequence(inst, idx, ArrivalSequence(30, kNoArrival)),
                  std::length_error);
}

TEST_CASE("lp upper-bounds the expected offline optimum on tiny instances") {
  TinySweepOptions opts;
  opts.oracle_sized = true;
  int tested = 0;
  for (std::uint64_t seed = 0; tested < 30 && seed < 60; ++seed) {
    const Instance inst = normalize_instance(random_tiny_instance(seed, opts));
    const Indexer idx(inst);
    if (!oracle_admits(inst, idx)) continue;
    const LpSolution sol = solve_offline_lp(LpModel::build(inst, idx));
    const double eopt = expected_offline_optimal(inst, idx);
    CHECK(sol.objective >= eopt - 1e-7);
    ++tested;
  }
  CHECK(tested == 30);
}

TEST_CASE("sequence optimum dominates simulated policies on that sequence") {
  const Instance inst = normalize_instance(random_tiny_instance(17, {}));
  const Indexer idx(inst);
  if (!oracle_admits(inst, idx)) return;
  const LpSolution sol = solve_offline_lp(LpModel::build(inst, idx));
  const SamplingTable sampling = build_sampling_tables(sol, inst, idx);
  const ValueTables tables = compute_value_tables(inst, idx, sol);
  const ArrivalSequence seq = sample_arrival_sequence(inst.arrival, 5);
  const double opt = offline_optimal_for_sequence(inst, idx, seq);

  for (auto kind : {PolicyKind::Proposed, PolicyKind::Greedy, PolicyKind::Random}) {
    const Policy policy = make_policy(kind, &sampling, &tables);
    const long n = 4000;
    double sum = 0.0, ss = 0.0;
    for (long i = 0; i < n; ++i) {
      const double p = run_trial(inst, idx, policy, seq, mix64(9, i)).profit;
      sum += p;
      ss += p * p;
    }
    const double mean = sum / n;
    const double var = std::max(0.0, ss / n - mean * mean);
    const double se = std::sqrt(var / n);
    CHECK(mean <= opt + 3.0 * se + 1e-9);
  }
}
