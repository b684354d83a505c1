#pragma once

#include <string>
#include <vector>

#include "otap/model.hpp"

namespace otap {

// The offline relaxation, as a packing LP
//
//   max  c.x   s.t.  A x <= b,  0 <= x <= upper,
//
// with one variable per (edge, step). Rows come in three kinds:
//   Occupancy  (agent, t): past assignments still occupying the agent plus
//               the current assignment probability stay below one;
//   Budget     (agent):    expected rejections plus never-returning
//               assignments stay below the rejection budget (finite budgets
//               only);
//   Capacity   (type, t):  per-arrival assignment mass stays below
//               p[v,t] * capacity.
//
// All coefficients, bounds and objective entries are nonnegative, so x = 0
// is always feasible and any x can be rescaled into the polytope.
class LpModel {
 public:
  enum class RowKind { Occupancy, Budget, Capacity };

  struct RowInfo {
    RowKind kind;
    int agent = -1;
    int type = -1;
    int t = -1;
    std::string label() const;
  };

  static LpModel build(const Instance& inst, const Indexer& idx);

  int horizon() const { return T_; }
  int num_edges() const { return E_; }
  int num_vars() const { return E_ * T_; }
  int num_rows() const { return static_cast<int>(rhs_.size()); }
  int var_index(int e, int t) const { return e * T_ + t; }

  const std::vector<double>& objective() const { return c_; }
  const std::vector<double>& upper_bounds() const { return upper_; }
  const std::vector<double>& rhs() const { return rhs_; }

  double edge_accept_prob(int e) const { return edge_q_[e]; }
  double edge_weight(int e) const { return edge_w_[e]; }

  RowInfo row_info(int r) const;
  // Materializes one row as sparse (var, coeff) pairs. Zero coefficients
  // are omitted.
  void row(int r, std::vector<std::pair<int, double>>& coeffs) const;

  // ax = A x (matrix-free; ax is resized to num_rows()).
  void apply(const std::vector<double>& x, std::vector<double>& ax) const;
  // aty = A^T y (resized to num_vars()).
  void apply_transpose(const std::vector<double>& y, std::vector<double>& aty) const;

  double objective_value(const std::vector<double>& x) const;
  // Largest violation over all rows and box bounds (0 when feasible).
  double max_violation(const std::vector<double>& x) const;

  // Scales x down so every row with positive rhs is satisfied exactly;
  // variables over rows with rhs = 0 are clamped to their (zero) boxes.
  void project_into_polytope(std::vector<double>& x) const;

 private:
  int T_ = 0, E_ = 0, U_ = 0, V_ = 0;
  std::vector<double> c_, upper_, rhs_;
  std::vector<double> edge_q_, edge_w_;
  std::vector<int> edge_agent_, edge_type_;
  std::vector<std::vector<std::pair<int, double>>> edge_pmf_;
  std::vector<std::vector<double>> edge_surv_;  // edge_surv_[e][d] = Pr[C_e >= d+1]
  std::vector<double> budget_coeff_;            // 1 - q_e Pr[C_e <= T-1-t], dense e*T+t
  std::vector<std::vector<int>> agent_edges_, type_edges_;
  std::vector<int> budgets_;            // kUnlimitedBudget for unlimited
  std::vector<int> budget_row_agent_;   // agents owning a Budget row, in row order
  int occupancy_rows_ = 0, budget_rows_ = 0;

  double survival(int e, int d) const {  // Pr[C_e >= d]
    const auto& s = edge_surv_[e];
    return (d - 1 < static_cast<int>(s.size())) ? (d >= 1 ? s[d - 1] : 1.0) : 0.0;
  }
};

}  // namespace otap
