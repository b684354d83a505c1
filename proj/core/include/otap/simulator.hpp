#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "otap/model.hpp"
#include "otap/policies.hpp"

namespace otap {

struct TrialOutcome {
  struct Event {
    int t;
    int agent;
    int edge;
    bool accepted;
  };
  double profit = 0.0;
  std::vector<int> accepted;  // per agent
  std::vector<int> rejected;  // per agent
  std::vector<Event> log;
};

// Plays one arrival sequence: per step the policy picks agents, each draws
// acceptance; accepts pay the edge weight and occupy the agent for a drawn
// occupation time, rejects burn budget. Deterministic given (seq, seed).
TrialOutcome run_trial(const Instance& inst, const Indexer& idx, const Policy& policy,
                       const ArrivalSequence& seq, std::uint64_t seed);

struct RunReport {
  std::string policy;
  long trials = 0;
  double mean = 0.0;
  double stddev = 0.0;
  double stderr_mean = 0.0;
  double lp_objective = 0.0;
  double ratio = 0.0;  // mean / lp_objective, 1 when the objective is zero
};

// N independent trials. Arrival sequences are derived from the master seed
// only (common random numbers across policies); policy and outcome draws are
// keyed by (policy, trial). threads = 0 picks the hardware count. The
// reduction order is fixed, so reports are byte-stable for a given seed.
RunReport run_monte_carlo(const Instance& inst, const Indexer& idx, const Policy& policy,
                          long trials, std::uint64_t master_seed, double lp_objective,
                          int threads = 0);

}  // namespace otap
