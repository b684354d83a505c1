#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "fixtures.hpp"
#include "otap/decomposition.hpp"
#include "otap/lp_model.hpp"
#include "otap/policies.hpp"

using namespace otap;

namespace {

struct Harness {
  Instance inst;
  Indexer idx;
  LpSolution sol;
  SamplingTable sampling;
  ValueTables tables;
  std::vector<AgentState> states;
  Rng rng = make_rng(1);

  explicit Harness(Instance i)
      : inst(std::move(i)),
        idx(inst),
        sol(solve_offline_lp(LpModel::build(inst, idx))),
        sampling(build_sampling_tables(sol, inst, idx)),
        tables(compute_value_tables(inst, idx, sol)) {
    states.resize(idx.num_agents());
    for (int u = 0; u < idx.num_agents(); ++u)
      states[u].remaining_budget = inst.agents[u].budget;
  }

  PolicyContext ctx(int t, int type) {
    PolicyContext c;
    c.instance = &inst;
    c.indexer = &idx;
    c.t = t;
    c.arrived_type = type;
    c.agents = &states;
    c.rng = &rng;
    return c;
  }
};

Instance greedy_fixture(std::vector<double> weights, std::vector<double> qs, int capacity) {
  Instance inst;
  inst.horizon = 1;
  inst.task_types = {{"v", capacity}};
  std::vector<std::vector<double>> probs;
  for (size_t i = 0; i < weights.size(); ++i) {
    inst.agents.push_back({"u" + std::to_string(i), 1});
    inst.edges.push_back(
        {"u" + std::to_string(i), "v", weights[i], qs[i], OccupationPmf::point_mass(1)});
  }
  inst.arrival.probs = {{1.0}};
  return inst;
}

}  // namespace

TEST_CASE("proposed skips the trap and nadap falls for it") {
  Harness h(fixtures::two_step_skip_trap(100.0));
  auto ctx = h.ctx(0, 0);
  CHECK(proposed_step(ctx, h.sampling, h.tables).empty());
  CHECK(nadap_step(ctx, h.sampling) == AssignmentSet{0});
  // Second step: both assign.
  auto ctx2 = h.ctx(1, 1);
  CHECK(proposed_step(ctx2, h.sampling, h.tables) == AssignmentSet{0});
}

TEST_CASE("no arrival short-circuits every policy") {
  Harness h(fixtures::two_step_skip_trap(100.0));
  auto ctx = h.ctx(0, kNoArrival);
  CHECK(proposed_step(ctx, h.sampling, h.tables).empty());
  CHECK(nadap_step(ctx, h.sampling).empty());
  CHECK(greedy_step(ctx).empty());
  CHECK(random_step(ctx).empty());
}

TEST_CASE("proposed assigns on the tie of the prophet fixture") {
  Harness h(fixtures::prophet_pair(0.1));
  auto ctx = h.ctx(0, 0);
  CHECK(proposed_step(ctx, h.sampling, h.tables) == AssignmentSet{0});
}

TEST_CASE("availability filters sampled agents") {
  Harness h(fixtures::two_step_skip_trap(100.0));
  h.states[0].busy_until = 5;
  auto ctx = h.ctx(1, 1);
  CHECK(nadap_step(ctx, h.sampling).empty());
  CHECK(proposed_step(ctx, h.sampling, h.tables).empty());

  h.states[0].busy_until = 0;
  h.states[0].departed = true;
  CHECK(nadap_step(ctx, h.sampling).empty());
}

TEST_CASE("greedy ranks by weight times acceptance") {
  Harness h(greedy_fixture({1.0, 0.4}, {0.9, 0.5}, 1));
  auto ctx = h.ctx(0, 0);
  CHECK(greedy_step(ctx) == AssignmentSet{0});

  // Nobody available: empty.
  h.states[0].departed = true;
  h.states[1].busy_until = 3;
  CHECK(greedy_step(ctx).empty());
}

TEST_CASE("greedy breaks ties by agent index") {
  Harness h(greedy_fixture({1.0, 1.0, 0.2}, {0.5, 0.5, 0.5}, 2));
  auto ctx = h.ctx(0, 0);
  CHECK(greedy_step(ctx) == AssignmentSet{0, 1});
}

TEST_CASE("random takes the only available neighbor") {
  Harness h(greedy_fixture({1.0}, {1.0}, 2));
  auto ctx = h.ctx(0, 0);
  CHECK(random_step(ctx) == AssignmentSet{0});
}

TEST_CASE("random picks uniformly") {
  Harness h(greedy_fixture({0.5, 0.5, 0.5}, {1.0, 1.0, 1.0}, 1));
  auto ctx = h.ctx(0, 0);
  int counts[3] = {0, 0, 0};
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const auto s = random_step(ctx);
    REQUIRE(s.size() == 1);
    ++counts[s[0]];
  }
  const double sigma = std::sqrt((1.0 / 3.0) * (2.0 / 3.0) / n);
  for (int u = 0; u < 3; ++u) {
    CHECK(std::abs(static_cast<double>(counts[u]) / n - 1.0 / 3.0) <= 3.0 * sigma);
  }
}

TEST_CASE("proposed output is a subset of nadap for the same draw") {
  Harness h(fixtures::three_step_budget_one(0.1));
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    for (int t = 0; t < 3; ++t) {
      Rng a = make_rng(seed);
      Rng b = make_rng(seed);
      auto ctx = h.ctx(t, t);  // type t arrives at step t in this fixture
      ctx.rng = &a;
      const auto prop = proposed_step(ctx, h.sampling, h.tables);
      ctx.rng = &b;
      const auto nad = nadap_step(ctx, h.sampling);
      CHECK(std::includes(nad.begin(), nad.end(), prop.begin(), prop.end()));
    }
  }
}

TEST_CASE("policy names round-trip") {
  for (auto kind : {PolicyKind::Proposed, PolicyKind::Nadap, PolicyKind::Greedy,
                    PolicyKind::Random}) {
    CHECK(parse_policy_name(policy_name(kind)) == kind);
  }
  CHECK(!parse_policy_name("frobnicate").has_value());
}

TEST_CASE("make_policy validates its inputs") {
  Harness h(fixtures::two_step_skip_trap(10.0));
  CHECK_THROWS_AS(make_policy(PolicyKind::Proposed, &h.sampling, nullptr),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_policy(PolicyKind::Nadap, nullptr, nullptr), std::invalid_argument);
  CHECK_NOTHROW(make_policy(PolicyKind::Greedy, nullptr, nullptr));
}
