#pragma once

#include <vector>

#include "otap/model.hpp"

namespace otap {

struct OracleGuards {
  double max_state_work = 1e7;       // joint agent states times subset count
  double max_sequence_count = 1e5;   // enumerated arrival sequences
};

// Exact expected profit of the best policy that knows the arrival sequence
// but not the acceptance or occupation draws. Stochastic DP over the joint
// (budget, busy-until) state; exponential in the instance size, guarded.
// Throws std::length_error when the guard trips.
double offline_optimal_for_sequence(const Instance& inst, const Indexer& idx,
                                    const ArrivalSequence& seq,
                                    const OracleGuards& guards = {});

// Exact E[OPT]: enumerates every arrival sequence with positive probability.
double expected_offline_optimal(const Instance& inst, const Indexer& idx,
                                const OracleGuards& guards = {});

// True when both guards admit the instance.
bool oracle_admits(const Instance& inst, const Indexer& idx, const OracleGuards& guards = {});

}  // namespace otap
