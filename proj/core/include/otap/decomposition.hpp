#pragma once

#include <cstdint>
#include <vector>

#include "otap/lp_offline.hpp"
#include "otap/model.hpp"
#include "otap/rng.hpp"

namespace otap {

// Distribution over feasible candidate sets for one (type, step) cell.
// Residual mass 1 - sum(lambda) belongs to the empty set.
struct SetDistribution {
  struct Entry {
    double lambda = 0.0;
    std::vector<int> members;  // sorted ascending; edge ids after table build
  };
  std::vector<Entry> entries;

  double total_mass() const;
  double empty_mass() const { return 1.0 - total_mass(); }
  // Sum of lambda over entries containing the member.
  double member_mass(int member) const;
};

// Writes y (0 <= y_e <= 1, sum y <= capacity) as a mixture of subsets of
// size <= capacity with exact member marginals. Greedy peel over the largest
// positive coordinates (ties by ascending index); the step size is capped so
// the remainder stays inside the scaled polytope, which bounds the mixture
// mass by one and the entry count by dim + 1.
SetDistribution caratheodory_decompose(const std::vector<double>& y, int capacity);

struct SamplingTable {
  int horizon = 0;
  std::vector<SetDistribution> cells;  // type * horizon + t; entries hold edge ids

  const SetDistribution& at(int type, int t) const { return cells[type * horizon + t]; }
};

// One SetDistribution per (type, t) with p[v,t] > 0, built from
// y = x[e,t] / p[v,t]. Precondition failures surface as exceptions since
// they indicate an infeasible LP solution.
SamplingTable build_sampling_tables(const LpSolution& sol, const Instance& inst,
                                    const Indexer& idx);

std::vector<int> sample_candidate_set(const SetDistribution& dist, Rng& rng);
std::vector<int> sample_candidate_set(const SetDistribution& dist, std::uint64_t seed);

}  // namespace otap
