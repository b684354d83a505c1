#include "otap/simulator.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

namespace otap {

namespace {

int sample_occupation(const OccupationPmf& pmf, Rng& rng) {
  double u = next_double(rng);
  int last = 1;
  for (const auto& [len, mass] : pmf.masses()) {
    u -= mass;
    last = len;
    if (u < 0.0) return len;
  }
  return last;  // guards against rounding in the final mass
}

}  // namespace

TrialOutcome run_trial(const Instance& inst, const Indexer& idx, const Policy& policy,
                       const ArrivalSequence& seq, std::uint64_t seed) {
  const int T = inst.horizon;
  if (static_cast<int>(seq.size()) != T)
    throw std::invalid_argument("arrival sequence length does not match the horizon");

  std::vector<AgentState> states(idx.num_agents());
  for (int u = 0; u < idx.num_agents(); ++u) {
    states[u].remaining_budget = inst.agents[u].budget;
    if (states[u].remaining_budget == 0)
      throw std::invalid_argument("instance is not normalized: zero budget");
  }

  Rng rng_policy = make_rng(mix64(seed, hash_tag("policy-draws")));
  Rng rng_outcome = make_rng(mix64(seed, hash_tag("outcome-draws")));

  TrialOutcome out;
  out.accepted.assign(idx.num_agents(), 0);
  out.rejected.assign(idx.num_agents(), 0);

  for (int t = 0; t < T; ++t) {
    const int v = seq[t];
    if (v == kNoArrival) continue;
    PolicyContext ctx;
    ctx.instance = &inst;
    ctx.indexer = &idx;
    ctx.t = t;
    ctx.arrived_type = v;
    ctx.agents = &states;
    ctx.rng = &rng_policy;

    const AssignmentSet chosen = policy.step(ctx);
    if (static_cast<int>(chosen.size()) > inst.task_types[v].capacity)
      throw std::logic_error("policy exceeded the task capacity");
    for (int u : chosen) {
      if (!ctx.available(u)) throw std::logic_error("policy assigned an unavailable agent");
      const int e = idx.edge_between(u, v);
      if (e < 0) throw std::logic_error("policy assigned a non-adjacent agent");
      const auto& spec = inst.edges[e];
      auto& st = states[u];
      const bool accepts = next_double(rng_outcome) < spec.accept_prob;
      if (accepts) {
        out.profit += spec.weight;
        ++out.accepted[u];
        st.busy_until = t + sample_occupation(spec.occupation, rng_outcome);
      } else {
        ++out.rejected[u];
        if (!is_unlimited(st.remaining_budget) && --st.remaining_budget == 0)
          st.departed = true;
      }
      out.log.push_back({t, u, e, accepts});
    }
  }
  return out;
}

RunReport run_monte_carlo(const Instance& inst, const Indexer& idx, const Policy& policy,
                          long trials, std::uint64_t master_seed, double lp_objective,
                          int threads) {
  if (trials < 1) throw std::invalid_argument("trial count must be >= 1");
  const std::uint64_t policy_tag = hash_tag(policy_name(policy.kind));
  std::vector<double> profits(trials);

  auto worker = [&](long lo, long hi) {
    for (long i = lo; i < hi; ++i) {
      const ArrivalSequence seq =
          sample_arrival_sequence(inst.arrival, mix64(master_seed, hash_tag("arrivals"),
                                                      static_cast<std::uint64_t>(i)));
      const std::uint64_t trial_seed =
          mix64(master_seed, policy_tag, static_cast<std::uint64_t>(i));
      profits[i] = run_trial(inst, idx, policy, seq, trial_seed).profit;
    }
  };

  int nthreads = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  nthreads = std::max(1, static_cast<int>(std::min<long>(nthreads, trials)));
  if (nthreads == 1) {
    worker(0, trials);
  } else {
    std::vector<std::thread> pool;
    const long chunk = (trials + nthreads - 1) / nthreads;
    for (int k = 0; k < nthreads; ++k) {
      const long lo = k * chunk;
      const long hi = std::min(trials, lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back(worker, lo, hi);
    }
    for (auto& th : pool) th.join();
  }

  // Fixed-order reduction keeps reports identical across thread counts.
  double sum = 0.0;
  for (double p : profits) sum += p;
  const double mean = sum / trials;
  double ss = 0.0;
  for (double p : profits) ss += (p - mean) * (p - mean);
  const double var = trials > 1 ? ss / (trials - 1) : 0.0;

  RunReport rep;
  rep.policy = policy_name(policy.kind);
  rep.trials = trials;
  rep.mean = mean;
  rep.stddev = std::sqrt(var);
  rep.stderr_mean = rep.stddev / std::sqrt(static_cast<double>(trials));
  rep.lp_objective = lp_objective;
  rep.ratio = lp_objective > 0.0 ? mean / lp_objective : 1.0;
  return rep;
}

}  // namespace otap
