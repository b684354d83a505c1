#include "otap/lp_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace otap {

std::string LpModel::RowInfo::label() const {
  switch (kind) {
    case RowKind::Occupancy:
      return "occupancy(u=" + std::to_string(agent) + ",t=" + std::to_string(t + 1) + ")";
    case RowKind::Budget:
      return "budget(u=" + std::to_string(agent) + ")";
    case RowKind::Capacity:
      return "capacity(v=" + std::to_string(type) + ",t=" + std::to_string(t + 1) + ")";
  }
  return "?";
}

LpModel LpModel::build(const Instance& inst, const Indexer& idx) {
  LpModel m;
  m.T_ = inst.horizon;
  m.E_ = idx.num_edges();
  m.U_ = idx.num_agents();
  m.V_ = idx.num_types();

  for (const auto& a : inst.agents) {
    if (!is_unlimited(a.budget) && a.budget < 1)
      throw std::invalid_argument("instance is not normalized: agent '" + a.id +
                                  "' has budget " + std::to_string(a.budget));
  }

  const int T = m.T_, E = m.E_;
  m.edge_q_.resize(E);
  m.edge_w_.resize(E);
  m.edge_agent_.resize(E);
  m.edge_type_.resize(E);
  m.edge_pmf_.resize(E);
  m.edge_surv_.resize(E);
  for (int e = 0; e < E; ++e) {
    const auto& spec = inst.edges[e];
    m.edge_q_[e] = spec.accept_prob;
    m.edge_w_[e] = spec.weight;
    m.edge_agent_[e] = idx.edge_agent(e);
    m.edge_type_[e] = idx.edge_type(e);
    m.edge_pmf_[e].assign(spec.occupation.masses().begin(), spec.occupation.masses().end());
    const int top = spec.occupation.max_support();
    auto& surv = m.edge_surv_[e];
    surv.assign(top, 0.0);
    for (const auto& [len, mass] : m.edge_pmf_[e]) {
      for (int d = 1; d <= len; ++d) surv[d - 1] += mass;
    }
  }
  m.agent_edges_.resize(m.U_);
  m.type_edges_.resize(m.V_);
  for (int u = 0; u < m.U_; ++u) m.agent_edges_[u] = idx.agent_edges(u);
  for (int v = 0; v < m.V_; ++v) m.type_edges_[v] = idx.type_edges(v);
  m.budgets_.resize(m.U_);
  for (int u = 0; u < m.U_; ++u) m.budgets_[u] = inst.agents[u].budget;

  m.c_.resize(E * T);
  m.upper_.resize(E * T);
  m.budget_coeff_.resize(E * T);
  for (int e = 0; e < E; ++e) {
    const int v = m.edge_type_[e];
    const auto& spec = inst.edges[e];
    for (int t = 0; t < T; ++t) {
      m.c_[e * T + t] = m.edge_w_[e] * m.edge_q_[e];
      m.upper_[e * T + t] = inst.arrival.probs[v][t];
      m.budget_coeff_[e * T + t] = 1.0 - m.edge_q_[e] * spec.occupation.cdf(T - 1 - t);
    }
  }

  m.occupancy_rows_ = m.U_ * T;
  for (int u = 0; u < m.U_; ++u) {
    if (!is_unlimited(m.budgets_[u])) m.budget_row_agent_.push_back(u);
  }
  m.budget_rows_ = static_cast<int>(m.budget_row_agent_.size());

  m.rhs_.assign(m.occupancy_rows_, 1.0);
  for (int u : m.budget_row_agent_) m.rhs_.push_back(static_cast<double>(m.budgets_[u]));
  for (int v = 0; v < m.V_; ++v) {
    for (int t = 0; t < T; ++t) {
      m.rhs_.push_back(inst.arrival.probs[v][t] * inst.task_types[v].capacity);
    }
  }
  return m;
}

LpModel::RowInfo LpModel::row_info(int r) const {
  if (r < occupancy_rows_) return {RowKind::Occupancy, r / T_, -1, r % T_};
  r -= occupancy_rows_;
  if (r < budget_rows_) return {RowKind::Budget, budget_row_agent_[r], -1, -1};
  r -= budget_rows_;
  return {RowKind::Capacity, -1, r / T_, r % T_};
}

void LpModel::row(int r, std::vector<std::pair<int, double>>& coeffs) const {
  coeffs.clear();
  const RowInfo info = row_info(r);
  switch (info.kind) {
    case RowKind::Occupancy: {
      for (int e : agent_edges_[info.agent]) {
        for (int tp = 0; tp <= info.t; ++tp) {
          const double coeff = edge_q_[e] * survival(e, info.t - tp + 1);
          if (coeff > 0.0) coeffs.emplace_back(var_index(e, tp), coeff);
        }
      }
      break;
    }
    case RowKind::Budget: {
      for (int e : agent_edges_[info.agent]) {
        for (int t = 0; t < T_; ++t) {
          const double coeff = budget_coeff_[e * T_ + t];
          if (coeff > 0.0) coeffs.emplace_back(var_index(e, t), coeff);
        }
      }
      break;
    }
    case RowKind::Capacity: {
      for (int e : type_edges_[info.type]) coeffs.emplace_back(var_index(e, info.t), 1.0);
      break;
    }
  }
}

void LpModel::apply(const std::vector<double>& x, std::vector<double>& ax) const {
  const int T = T_;
  ax.assign(num_rows(), 0.0);
  std::vector<double> prefix(T + 1);

  // Occupancy rows via per-edge prefix sums: the row value at t accumulates
  // q_e * sum_l pmf(l) * (X(t) - X(t-l)).
  for (int u = 0; u < U_; ++u) {
    double* out = ax.data() + u * T;
    for (int e : agent_edges_[u]) {
      const double* xe = x.data() + e * T;
      prefix[0] = 0.0;
      for (int t = 0; t < T; ++t) prefix[t + 1] = prefix[t] + xe[t];
      const double q = edge_q_[e];
      for (const auto& [len, mass] : edge_pmf_[e]) {
        const double qm = q * mass;
        if (qm == 0.0) continue;
        for (int t = 0; t < T; ++t) {
          const int lo = std::max(0, t - len + 1);
          out[t] += qm * (prefix[t + 1] - prefix[lo]);
        }
      }
    }
  }
  int r = occupancy_rows_;
  for (int u : budget_row_agent_) {
    double acc = 0.0;
    for (int e : agent_edges_[u]) {
      const double* xe = x.data() + e * T;
      const double* ce = budget_coeff_.data() + e * T;
      for (int t = 0; t < T; ++t) acc += ce[t] * xe[t];
    }
    ax[r++] = acc;
  }
  for (int v = 0; v < V_; ++v) {
    double* out = ax.data() + r + v * T;
    for (int e : type_edges_[v]) {
      const double* xe = x.data() + e * T;
      for (int t = 0; t < T; ++t) out[t] += xe[t];
    }
  }
}

void LpModel::apply_transpose(const std::vector<double>& y, std::vector<double>& aty) const {
  const int T = T_;
  aty.assign(num_vars(), 0.0);
  std::vector<double> prefix(T + 1);

  for (int u = 0; u < U_; ++u) {
    const double* yu = y.data() + u * T;
    prefix[0] = 0.0;
    for (int t = 0; t < T; ++t) prefix[t + 1] = prefix[t] + yu[t];
    for (int e : agent_edges_[u]) {
      double* out = aty.data() + e * T;
      const double q = edge_q_[e];
      for (const auto& [len, mass] : edge_pmf_[e]) {
        const double qm = q * mass;
        if (qm == 0.0) continue;
        for (int tp = 0; tp < T; ++tp) {
          const int hi = std::min(T - 1, tp + len - 1);
          out[tp] += qm * (prefix[hi + 1] - prefix[tp]);
        }
      }
    }
  }
  int r = occupancy_rows_;
  for (int u : budget_row_agent_) {
    const double yr = y[r++];
    if (yr == 0.0) continue;
    for (int e : agent_edges_[u]) {
      double* out = aty.data() + e * T;
      const double* ce = budget_coeff_.data() + e * T;
      for (int t = 0; t < T; ++t) out[t] += yr * ce[t];
    }
  }
  for (int v = 0; v < V_; ++v) {
    const double* yv = y.data() + r + v * T;
    for (int e : type_edges_[v]) {
      double* out = aty.data() + e * T;
      for (int t = 0; t < T; ++t) out[t] += yv[t];
    }
  }
}

double LpModel::objective_value(const std::vector<double>& x) const {
  double acc = 0.0;
  for (int j = 0; j < num_vars(); ++j) acc += c_[j] * x[j];
  return acc;
}

double LpModel::max_violation(const std::vector<double>& x) const {
  std::vector<double> ax;
  apply(x, ax);
  double worst = 0.0;
  for (int r = 0; r < num_rows(); ++r) worst = std::max(worst, ax[r] - rhs_[r]);
  for (int j = 0; j < num_vars(); ++j) {
    worst = std::max(worst, x[j] - upper_[j]);
    worst = std::max(worst, -x[j]);
  }
  return worst;
}

void LpModel::project_into_polytope(std::vector<double>& x) const {
  for (int j = 0; j < num_vars(); ++j) x[j] = std::clamp(x[j], 0.0, upper_[j]);
  std::vector<double> ax;
  apply(x, ax);
  double scale = 1.0;
  for (int r = 0; r < num_rows(); ++r) {
    if (rhs_[r] > 0.0 && ax[r] > rhs_[r] * scale) scale = ax[r] / rhs_[r];
  }
  if (scale > 1.0) {
    for (double& v : x) v /= scale;
  }
}

}  // namespace otap
