#include "otap/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace otap {

namespace {

constexpr double kZeroTol = 1e-9;

}  // namespace

double SetDistribution::total_mass() const {
  double acc = 0.0;
  for (const auto& e : entries) acc += e.lambda;
  return acc;
}

double SetDistribution::member_mass(int member) const {
  double acc = 0.0;
  for (const auto& e : entries) {
    if (std::binary_search(e.members.begin(), e.members.end(), member)) acc += e.lambda;
  }
  return acc;
}

SetDistribution caratheodory_decompose(const std::vector<double>& y, int capacity) {
  const int n = static_cast<int>(y.size());
  if (capacity < 1) throw std::invalid_argument("capacity must be >= 1");
  double total = 0.0;
  for (double v : y) {
    if (v < -kZeroTol || v > 1.0 + kZeroTol)
      throw std::invalid_argument("decomposition input outside [0, 1]");
    total += v;
  }
  if (total > capacity + kZeroTol)
    throw std::invalid_argument("decomposition input mass exceeds capacity");

  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) w[i] = std::clamp(y[i], 0.0, 1.0);

  SetDistribution dist;
  double used = 0.0;
  std::vector<int> active;
  active.reserve(n);

  for (int iter = 0; iter <= n + capacity + 2; ++iter) {
    active.clear();
    for (int i = 0; i < n; ++i) {
      if (w[i] > kZeroTol) active.push_back(i);
    }
    if (active.empty()) break;

    std::sort(active.begin(), active.end(), [&](int a, int b) {
      if (w[a] != w[b]) return w[a] > w[b];
      return a < b;
    });
    const int take = std::min<int>(capacity, static_cast<int>(active.size()));

    double step = w[active[0]];
    for (int k = 1; k < take; ++k) step = std::min(step, w[active[k]]);
    // Cap: every coordinate left outside the set must still fit in the
    // remaining mass budget, otherwise later sets cannot cover it.
    if (static_cast<int>(active.size()) > take) {
      const double out_max = w[active[take]];
      step = std::min(step, (1.0 - used) - out_max);
    }
    if (step < 1e-15) {
      // Numerically stuck cap; fall back to zeroing the smallest selected
      // coordinate. The overshoot this admits is below the tolerance.
      step = w[active[take - 1]];
    }

    SetDistribution::Entry entry;
    entry.lambda = step;
    entry.members.assign(active.begin(), active.begin() + take);
    std::sort(entry.members.begin(), entry.members.end());
    for (int k = 0; k < take; ++k) {
      const int i = active[k];
      w[i] = std::max(0.0, w[i] - step);
    }
    used += step;
    dist.entries.push_back(std::move(entry));
  }

  for (int i = 0; i < n; ++i) {
    if (w[i] > kZeroTol)
      throw std::logic_error("decomposition failed to exhaust its input");
  }

  // Merge duplicate sets, keeping first-seen order.
  std::vector<SetDistribution::Entry> merged;
  for (auto& e : dist.entries) {
    bool found = false;
    for (auto& me : merged) {
      if (me.members == e.members) {
        me.lambda += e.lambda;
        found = true;
        break;
      }
    }
    if (!found) merged.push_back(std::move(e));
  }
  dist.entries = std::move(merged);
  return dist;
}

SamplingTable build_sampling_tables(const LpSolution& sol, const Instance& inst,
                                    const Indexer& idx) {
  const int T = inst.horizon;
  SamplingTable table;
  table.horizon = T;
  table.cells.resize(static_cast<std::size_t>(idx.num_types()) * T);

  std::vector<double> y;
  for (int v = 0; v < idx.num_types(); ++v) {
    const auto& edges = idx.type_edges(v);
    for (int t = 0; t < T; ++t) {
      const double p = inst.arrival.probs[v][t];
      if (p <= 0.0) continue;  // empty distribution
      y.resize(edges.size());
      for (size_t i = 0; i < edges.size(); ++i) {
        y[i] = sol.x[edges[i] * T + t] / p;
      }
      SetDistribution dist = caratheodory_decompose(y, inst.task_types[v].capacity);
      for (auto& entry : dist.entries) {
        for (int& member : entry.members) member = edges[member];
      }
      table.cells[static_cast<std::size_t>(v) * T + t] = std::move(dist);
    }
  }
  return table;
}

std::vector<int> sample_candidate_set(const SetDistribution& dist, Rng& rng) {
  double u = next_double(rng);
  for (const auto& e : dist.entries) {
    u -= e.lambda;
    if (u < 0.0) return e.members;
  }
  return {};
}

std::vector<int> sample_candidate_set(const SetDistribution& dist, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  return sample_candidate_set(dist, rng);
}

}  // namespace otap
