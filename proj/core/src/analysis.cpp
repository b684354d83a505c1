#include "otap/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "otap/lp_model.hpp"
#include "otap/oracle.hpp"

namespace otap {

double ModifiedInstance::objective() const {
  double acc = 0.0;
  for (int t = 0; t < horizon; ++t) acc += p[t] * q[t] * w[t];
  return acc;
}

ModifiedInstance build_modified_instance(const Instance& inst, const Indexer& idx,
                                         const LpSolution& sol, int agent) {
  const int T = inst.horizon;
  ModifiedInstance mod;
  mod.horizon = T;
  mod.budget = inst.agents[agent].budget;
  mod.p.assign(T, 0.0);
  mod.q.assign(T, 0.0);
  mod.w.assign(T, 0.0);
  mod.occ.resize(T);

  const auto& edges = idx.agent_edges(agent);
  for (int t = 0; t < T; ++t) {
    double sum_x = 0.0, sum_xq = 0.0, sum_xqw = 0.0;
    std::map<int, double> occ_mass;
    for (int e : edges) {
      const auto& spec = inst.edges[e];
      const double x = sol.x[static_cast<std::size_t>(e) * T + t];
      sum_x += x;
      sum_xq += x * spec.accept_prob;
      sum_xqw += x * spec.accept_prob * spec.weight;
      for (const auto& [len, mass] : spec.occupation.masses()) {
        occ_mass[len] += x * spec.accept_prob * mass;
      }
    }
    mod.p[t] = sum_x;
    mod.q[t] = sum_x > 0.0 ? sum_xq / sum_x : 0.0;
    const double pq = sum_x * mod.q[t];  // = sum_xq
    mod.w[t] = pq > 0.0 ? sum_xqw / pq : 0.0;
    if (sum_x > 0.0 && mod.q[t] > 0.0) {
      std::vector<std::pair<int, double>> masses;
      masses.reserve(occ_mass.size());
      for (const auto& [len, mass] : occ_mass) masses.emplace_back(len, mass / sum_xq);
      mod.occ[t] = OccupationPmf(std::move(masses));
    } else {
      mod.occ[t] = OccupationPmf::point_mass(T);
    }
  }
  return mod;
}

double ModifiedTables::r_at(int d, int t) const {
  if (t >= horizon) return 0.0;
  if (is_unlimited(budget)) return r[t];
  if (d <= 0) return 0.0;
  return r[static_cast<std::size_t>(std::min(d, budget)) * (horizon + 1) + t];
}

ModifiedTables compute_modified_tables(const ModifiedInstance& mod) {
  const int T = mod.horizon;
  const bool unlimited = is_unlimited(mod.budget);
  ModifiedTables out;
  out.horizon = T;
  out.budget = mod.budget;
  out.levels = unlimited ? 1 : mod.budget + 1;
  out.r.assign(static_cast<std::size_t>(out.levels) * (T + 1), 0.0);

  auto cell = [&](int level, int t) -> double& {
    return out.r[static_cast<std::size_t>(level) * (T + 1) + t];
  };
  for (int t = T - 1; t >= 0; --t) {
    for (int level = unlimited ? 0 : 1; level < out.levels; ++level) {
      const double cont = cell(level, t + 1);
      double future = 0.0;
      for (const auto& [len, mass] : mod.occ[t].masses()) {
        if (t + len < T) future += mass * cell(level, t + len);
      }
      const double down = unlimited ? cont : (level >= 2 ? cell(level - 1, t + 1) : 0.0);
      const double qval = mod.q[t] * (mod.w[t] + future) + (1.0 - mod.q[t]) * down;
      cell(level, t) = mod.p[t] * std::max(qval, cont) + (1.0 - mod.p[t]) * cont;
    }
  }
  return out;
}

bool check_value_dominance(const ValueTables& tables, int agent, const ModifiedTables& mod,
                           double tol, double* worst_slack) {
  const auto& tab = tables.agents[agent];
  const int T = tables.horizon;
  double worst = 0.0;
  if (is_unlimited(tab.budget)) {
    for (int t = 0; t < T; ++t) {
      worst = std::min(worst,
                       tab.r_at(kUnlimitedBudget, t, T) - mod.r_at(kUnlimitedBudget, t));
    }
  } else {
    for (int d = 0; d <= tab.budget; ++d) {
      for (int t = 0; t < T; ++t) worst = std::min(worst, tab.r_at(d, t, T) - mod.r_at(d, t));
    }
  }
  if (worst_slack) *worst_slack = worst;
  return worst >= -tol;
}

bool check_budget_monotonicity(const ModifiedTables& mod, double tol, double* worst_slack) {
  double worst = 0.0;
  if (!is_unlimited(mod.budget)) {
    for (int d = 1; d <= mod.budget; ++d) {
      const double scale = static_cast<double>(d - 1) / d;
      for (int t = 0; t < mod.horizon; ++t) {
        worst = std::min(worst, mod.r_at(d - 1, t) - scale * mod.r_at(d, t));
      }
    }
  }
  if (worst_slack) *worst_slack = worst;
  return worst >= -tol;
}

CertificateReport check_dual_certificate(const ModifiedInstance& mod, double gamma,
                                         CertificateKind kind, double tol) {
  const int T = mod.horizon;
  const bool limited = kind == CertificateKind::Limited;
  const bool finite = !is_unlimited(mod.budget);
  const double inv_delta = (limited && finite) ? 1.0 / mod.budget : 0.0;
  const double keep_ratio = 1.0 - inv_delta;  // (delta-1)/delta, 1 in the limit

  // 1-based time vectors.
  std::vector<double> B(T + 1, 0.0), A(T + 1, 0.0);
  for (int t = 1; t <= T; ++t) {
    const double p = mod.p[t - 1], q = mod.q[t - 1];
    B[t] = p * q;
    A[t] = B[t] * mod.occ[t - 1].mass_at(1) + p * (1.0 - q) * keep_ratio + (1.0 - p);
  }
  auto pmf = [&](int t, int len) { return mod.occ[t - 1].mass_at(len); };
  auto surv = [&](int t, int len) { return mod.occ[t - 1].survival(len); };

  CertificateReport rep;
  rep.alpha.assign(T + 1, gamma);
  rep.alpha[0] = 0.0;

  // beta by the recurrence the dual rows force; beta[T] is the slack
  // variable of the terminal row, not a dual variable.
  std::vector<double> beta(T + 1, 0.0);
  if (T >= 1) beta[1] = 1.0 - gamma;
  for (int t = 2; t <= T; ++t) {
    double carry = 0.0;
    for (int l = 1; l <= t - 2; ++l) carry += B[l] * pmf(l, t - l);
    beta[t] = beta[t - 1] - gamma * (1.0 - A[t - 1]) + gamma * carry;
  }

  // Closed form for t >= 2.
  double mismatch = 0.0;
  for (int t = 2; t <= T; ++t) {
    double occ_sum = 0.0, rej_sum = 0.0;
    for (int l = 1; l < t; ++l) {
      occ_sum += B[l] * surv(l, t - l + 1);
      rej_sum += mod.p[l - 1] * (1.0 - mod.q[l - 1]);
    }
    const double closed = 1.0 - gamma - gamma * inv_delta * rej_sum - gamma * occ_sum;
    mismatch = std::max(mismatch, std::abs(beta[t] - closed));
  }
  rep.beta_mismatch = mismatch;

  double min_slack = std::min(gamma, 1.0 - gamma);  // alpha >= 0 and, for T=1, alpha_1 <= 1
  if (T >= 2) {
    min_slack = std::min(min_slack, 1.0 - (rep.alpha[1] + beta[1]));
    for (int t = 2; t <= T; ++t) {
      double rhs = A[t - 1] * rep.alpha[t - 1] + beta[t - 1];
      for (int l = 1; l <= t - 2; ++l) rhs += rep.alpha[l] * B[l] * pmf(l, t - l);
      const double lhs = rep.alpha[t] + (t < T ? beta[t] : 0.0);
      min_slack = std::min(min_slack, rhs - lhs);
    }
    for (int t = 1; t <= T - 1; ++t) min_slack = std::min(min_slack, beta[t]);
  }
  rep.min_slack = min_slack;
  rep.feasible = min_slack >= -tol;

  double objective = 0.0;
  for (int t = 1; t <= T; ++t) objective += B[t] * mod.w[t - 1];
  rep.objective = gamma * objective;

  double theta_max = 0.0;
  for (int t = 2; t <= T; ++t) {
    double occ_sum = 0.0, rej_sum = 0.0;
    for (int l = 1; l < t; ++l) {
      occ_sum += B[l] * surv(l, t - l + 1);
      rej_sum += mod.p[l - 1] * (1.0 - mod.q[l - 1]);
    }
    theta_max = std::max(theta_max, inv_delta * rej_sum + occ_sum);
  }
  rep.theta_max = theta_max;
  rep.theta_bounded = theta_max <= 1.0 + keep_ratio + tol;

  rep.beta.assign(beta.begin(), beta.end());
  return rep;
}

double guarantee_for_budget(int budget) {
  if (is_unlimited(budget)) return 0.5;
  return static_cast<double>(budget) / (3.0 * budget - 1.0);
}

double kiid_guarantee_for_budget(int budget) {
  const double exponent = is_unlimited(budget) ? 2.0 : 2.0 - 1.0 / budget;
  return (1.0 - std::exp(-exponent)) / exponent;
}

namespace {

BoundCheck make_bound_check(const std::string& name, double factor, double dp, double lp,
                            double tol) {
  BoundCheck bc;
  bc.name = name;
  bc.factor = factor;
  bc.dp_value = dp;
  bc.lp_objective = lp;
  if (lp <= 0.0) {
    bc.ratio = 1.0;
    bc.pass = true;
    bc.slack = 0.0;
  } else {
    bc.ratio = dp / lp;
    bc.slack = dp - factor * lp;
    bc.pass = bc.slack >= -tol;
  }
  return bc;
}

}  // namespace

BoundCheck check_competitive_bounds(const Instance& inst, const LpSolution& sol,
                                    const ValueTables& tables, double tol) {
  bool all_unlimited = true;
  double factor = 1.0;
  for (const auto& a : inst.agents) {
    if (!is_unlimited(a.budget)) all_unlimited = false;
    factor = std::min(factor, guarantee_for_budget(a.budget));
  }
  return make_bound_check(all_unlimited ? "bound_unlimited" : "bound_general", factor,
                          tables.total_initial_value(), sol.objective, tol);
}

BoundCheck check_kiid_bound(const Instance& inst, const LpSolution& symmetrized,
                            const ValueTables& tables, double tol) {
  double factor = 1.0;
  for (const auto& a : inst.agents)
    factor = std::min(factor, kiid_guarantee_for_budget(a.budget));
  return make_bound_check("bound_kiid", factor, tables.total_initial_value(),
                          symmetrized.objective, tol);
}

namespace {

// Re-evaluates the stored recursion cell by cell.
double dp_recursion_residual(const Instance& inst, const Indexer& idx, const LpSolution& sol,
                             const ValueTables& tables) {
  const int T = inst.horizon;
  double worst = 0.0;
  for (int u = 0; u < idx.num_agents(); ++u) {
    const auto& tab = tables.agents[u];
    const bool unlimited = is_unlimited(tab.budget);
    const int dmax = unlimited ? 1 : tab.budget;
    for (int pass = 1; pass <= dmax; ++pass) {
      const int d = unlimited ? kUnlimitedBudget : pass;
      for (int t = 0; t < T; ++t) {
        double sum_x = 0.0, acc = 0.0;
        const double cont = tab.r_at(d, t + 1, T);
        for (std::size_t le = 0; le < tab.edges.size(); ++le) {
          const int e = tab.edges[le];
          const double x = sol.x[static_cast<std::size_t>(e) * T + t];
          sum_x += x;
          acc += x * std::max(tab.q_at(d, static_cast<int>(le), t, T), cont);
        }
        acc += (1.0 - sum_x) * cont;
        worst = std::max(worst, std::abs(acc - tab.r_at(d, t, T)));
      }
      if (unlimited) break;
    }
  }
  return worst;
}

}  // namespace

std::vector<CheckResult> verify_instance(const Instance& raw, const VerifyOptions& opts) {
  std::vector<CheckResult> out;
  auto add = [&](const std::string& check, bool pass, double slack) {
    out.push_back({check, opts.instance_id, pass, slack});
  };

  const Instance inst = normalize_instance(raw);
  const auto violations = validate_instance(inst);
  if (!violations.empty()) {
    for (const auto& v : violations) add("validate:" + v.field, false, 0.0);
    return out;
  }

  const Indexer idx(inst);
  const LpModel model = LpModel::build(inst, idx);
  const LpSolution sol = solve_offline_lp(model);
  const int T = inst.horizon;

  add("lp_feasible", sol.max_residual <= 1e-7, 1e-7 - sol.max_residual);

  if (opts.with_oracle && oracle_admits(inst, idx)) {
    const double eopt = expected_offline_optimal(inst, idx);
    add("lemma1_lp_bounds_opt", sol.objective >= eopt - 1e-7, sol.objective - eopt);
  }

  const ValueTables tables = compute_value_tables(inst, idx, sol);
  const double dp_resid = dp_recursion_residual(inst, idx, sol, tables);
  add("dp_recursion", dp_resid <= 1e-12, 1e-12 - dp_resid);

  {
    double worst = 0.0;
    double base_err = 0.0;
    for (int u = 0; u < idx.num_agents(); ++u) {
      const auto& tab = tables.agents[u];
      const int dmax = is_unlimited(tab.budget) ? 1 : tab.budget;
      double base = 0.0;
      for (int e : tab.edges) {
        base += sol.x[static_cast<std::size_t>(e) * T + (T - 1)] *
                inst.edges[e].accept_prob * inst.edges[e].weight;
      }
      for (int pass = 1; pass <= dmax; ++pass) {
        const int d = is_unlimited(tab.budget) ? kUnlimitedBudget : pass;
        for (int t = 0; t < T; ++t)
          worst = std::min(worst, tab.r_at(d, t, T) - tab.r_at(d, t + 1, T));
        base_err = std::max(base_err, std::abs(tab.r_at(d, T - 1, T) - base));
        if (is_unlimited(tab.budget)) break;
      }
    }
    add("dp_time_monotone", worst >= -1e-9, worst);
    add("dp_base_row", base_err <= 1e-9, 1e-9 - base_err);
  }

  {
    double identity_err = 0.0, pmf_err = 0.0, lemma2 = 0.0, lemma4 = 0.0;
    double cert_unlimited = 1.0, cert_limited = 1.0, beta_err = 0.0;
    bool theta_ok = true;
    for (int u = 0; u < idx.num_agents(); ++u) {
      const ModifiedInstance mod = build_modified_instance(inst, idx, sol, u);
      double share = 0.0;
      for (int e : idx.agent_edges(u)) {
        for (int t = 0; t < T; ++t) {
          share += sol.x[static_cast<std::size_t>(e) * T + t] * inst.edges[e].accept_prob *
                   inst.edges[e].weight;
        }
      }
      identity_err = std::max(identity_err, std::abs(mod.objective() - share));
      for (int t = 0; t < T; ++t)
        pmf_err = std::max(pmf_err, std::abs(mod.occ[t].total_mass() - 1.0));

      const ModifiedTables mt = compute_modified_tables(mod);
      double slack = 0.0;
      check_value_dominance(tables, u, mt, 1e-9, &slack);
      lemma2 = std::min(lemma2, slack);
      check_budget_monotonicity(mt, 1e-9, &slack);
      lemma4 = std::min(lemma4, slack);

      const auto cu = check_dual_certificate(mod, 0.5, CertificateKind::Unlimited);
      cert_unlimited = std::min(cert_unlimited, cu.min_slack);
      const double gamma_l = guarantee_for_budget(is_unlimited(mod.budget) ? kUnlimitedBudget
                                                                           : mod.budget);
      const auto cl = check_dual_certificate(
          mod, is_unlimited(mod.budget) ? 1.0 / 3.0 : gamma_l, CertificateKind::Limited);
      cert_limited = std::min(cert_limited, cl.min_slack);
      beta_err = std::max({beta_err, cu.beta_mismatch, cl.beta_mismatch});
      theta_ok = theta_ok && cl.theta_bounded;
    }
    add("modified_objective_identity", identity_err <= 1e-9, 1e-9 - identity_err);
    add("modified_pmf_mass", pmf_err <= 1e-9, 1e-9 - pmf_err);
    add("lemma2_dominance", lemma2 >= -1e-9, lemma2);
    add("lemma4_budget_monotone", lemma4 >= -1e-9, lemma4);
    add("cert_unlimited_feasible", cert_unlimited >= -1e-9, cert_unlimited);
    add("cert_limited_feasible", cert_limited >= -1e-9, cert_limited);
    add("cert_theta_bound", theta_ok, 0.0);
    add("beta_closed_form", beta_err <= 1e-9, 1e-9 - beta_err);
  }

  {
    const SamplingTable sampling = build_sampling_tables(sol, inst, idx);
    double marg_err = 0.0;
    int card_excess = 0, entry_excess = 0;
    double mass_excess = 0.0;
    for (int v = 0; v < idx.num_types(); ++v) {
      const auto& edges = idx.type_edges(v);
      for (int t = 0; t < T; ++t) {
        const double p = inst.arrival.probs[v][t];
        if (p <= 0.0) continue;
        const auto& dist = sampling.at(v, t);
        for (int e : edges) {
          const double want = sol.x[static_cast<std::size_t>(e) * T + t] / p;
          marg_err = std::max(marg_err, std::abs(dist.member_mass(e) - want));
        }
        for (const auto& entry : dist.entries) {
          card_excess = std::max(
              card_excess,
              static_cast<int>(entry.members.size()) - inst.task_types[v].capacity);
        }
        entry_excess = std::max(entry_excess, static_cast<int>(dist.entries.size()) -
                                                  (static_cast<int>(edges.size()) + 1));
        mass_excess = std::max(mass_excess, dist.total_mass() - 1.0);
      }
    }
    add("decomp_marginals", marg_err <= 1e-9, 1e-9 - marg_err);
    add("decomp_cardinality", card_excess <= 0, -card_excess);
    add("decomp_entry_count", entry_excess <= 0, -entry_excess);
    add("decomp_total_mass", mass_excess <= 1e-9, 1e-9 - mass_excess);
  }

  {
    const BoundCheck bc = check_competitive_bounds(inst, sol, tables);
    add(bc.name, bc.pass, bc.slack);
    if (inst.arrival.is_kiid() && is_non_reusable(inst)) {
      const LpSolution sym = symmetrize_kiid_solution(sol, inst, idx);
      add("kiid_symmetrize_feasible", sym.max_residual <= 1e-9, 1e-9 - sym.max_residual);
      const ValueTables sym_tables = compute_value_tables(inst, idx, sym);
      const BoundCheck kb = check_kiid_bound(inst, sym, sym_tables);
      add(kb.name, kb.pass, kb.slack);
    }
  }

  return out;
}

}  // namespace otap
