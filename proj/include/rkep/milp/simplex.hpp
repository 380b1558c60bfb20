#pragma once

// Bounded dual simplex over a dense explicit basis inverse.
//
// Every column is boxed: structural columns by their variable bounds, and one
// logical column per row whose bounds are the row's admissible activity range
// (one-sided rows are closed off with the activity bound implied by the
// variable bounds). With all columns boxed, any basis can be made dual
// feasible by moving nonbasic columns to the bound matching their reduced
// cost, so the solver never needs a phase one and warm starts across bound
// changes are free.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "rkep/milp/model.hpp"
#include "rkep/util/deadline.hpp"

namespace rkep::milp {

enum class LpStatus { Optimal, Infeasible, TimeLimit };

struct Tolerances {
  double feasibility = 1e-7;
  double integrality = 1e-6;
  double gap = 1e-6;
};

class DualSimplex {
 public:
  explicit DualSimplex(const Model& model, Tolerances tol = {}) : tol_(tol) {
    n_ = model.num_vars();
    m_ = model.num_rows();
    const int total = n_ + m_;
    cols_.assign(n_, {});
    lb_.resize(total);
    ub_.resize(total);
    cost_.assign(total, 0.0);
    const double sign = model.sense() == Sense::Maximize ? -1.0 : 1.0;
    for (int j = 0; j < n_; ++j) {
      const Variable& v = model.var(j);
      lb_[j] = v.lb;
      ub_[j] = v.ub;
      cost_[j] = sign * v.obj;
    }
    for (int i = 0; i < m_; ++i) {
      const Row& r = model.row(i);
      double lo = 0.0, hi = 0.0;
      for (const Term& t : r.terms) {
        cols_[t.var.value].push_back({i, t.coef});
        const Variable& v = model.var(t.var);
        lo += t.coef > 0 ? t.coef * v.lb : t.coef * v.ub;
        hi += t.coef > 0 ? t.coef * v.ub : t.coef * v.lb;
      }
      double rl = lo, ru = hi;
      if (r.rel == Relation::LessEqual) ru = r.rhs;
      if (r.rel == Relation::GreaterEqual) rl = r.rhs;
      if (r.rel == Relation::Equal) rl = ru = r.rhs;
      if (r.rel != Relation::GreaterEqual && r.rhs < lo - tol_.feasibility) trivially_infeasible_ = true;
      if (r.rel != Relation::LessEqual && r.rhs > hi + tol_.feasibility) trivially_infeasible_ = true;
      if (rl > ru) {
        // rhs outside the activity range but within tolerance
        if (r.rel == Relation::LessEqual) rl = ru;
        else ru = rl;
      }
      lb_[n_ + i] = rl;
      ub_[n_ + i] = ru;
    }
    true_cost_ = cost_;
    perturbed_cost_ = cost_;
    // deterministic cost perturbation against dual degeneracy
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (int j = 0; j < n_; ++j) {
      h ^= h >> 31;
      h *= 0xbf58476d1ce4e5b9ULL;
      h ^= h >> 29;
      const double u = 0.5 + 0.5 * static_cast<double>(h >> 11) * 0x1.0p-53;
      perturbed_cost_[j] += 1e-7 * (1.0 + std::abs(cost_[j])) * u;
    }
    value_.assign(total, 0.0);
    reset_to_slack_basis();
  }

  int num_columns() const { return n_; }

  void set_bounds(int j, double lb, double ub) {
    lb_[j] = lb;
    ub_[j] = ub;
    if (pos_[j] < 0) place_nonbasic(j);
  }
  double lower(int j) const { return lb_[j]; }
  double upper(int j) const { return ub_[j]; }

  LpStatus solve(const Deadline& deadline = Deadline()) {
    if (trivially_infeasible_) return LpStatus::Infeasible;
    for (int j = 0; j < n_; ++j)
      if (lb_[j] > ub_[j] + tol_.feasibility) return LpStatus::Infeasible;
    if (since_refactor_ > 0 && !refactor()) reset_to_slack_basis();
    // perturbed pass, then a cleanup pass on the true costs
    LpStatus st = LpStatus::Optimal;
    for (const auto* costs : {&perturbed_cost_, &true_cost_}) {
      cost_ = *costs;
      compute_reduced_costs();
      restore_dual_feasibility();
      compute_basic_values();
      st = run(deadline);
      if (st != LpStatus::Optimal) break;
    }
    if (cost_ != true_cost_) {
      cost_ = true_cost_;
      compute_reduced_costs();
    }
    return st;
  }

  /// Objective of the current basic solution in the model's sense.
  double objective(Sense sense) const {
    const double v = objective_internal();
    return sense == Sense::Maximize ? -v : v;
  }

  std::vector<double> primal() const { return {value_.begin(), value_.begin() + n_}; }
  double primal(int j) const { return value_[j]; }
  long iterations() const { return iterations_; }

 private:
  struct Entry {
    int row;
    double coef;
  };

  LpStatus run(const Deadline& deadline) {
    const long cap = 20000 + 200L * (n_ + m_);
    long stall = 0;
    double last_obj = -std::numeric_limits<double>::infinity();
    for (long it = 0;; ++it) {
      if (it > cap) throw Error("simplex iteration limit exceeded");
      if ((it & 63) == 63 && deadline.expired()) return LpStatus::TimeLimit;
      const bool bland = stall > 50;
      const int r = choose_leaving(bland);
      if (r < 0) {
        if (since_refactor_ > 0) {
          if (!refactor()) {
            reset_to_slack_basis();
            restore_dual_feasibility();
            compute_basic_values();
            continue;
          }
          restore_dual_feasibility();
          compute_basic_values();
          if (choose_leaving(false) >= 0) continue;
        }
        return LpStatus::Optimal;
      }
      const int leaving = head_[r];
      const bool to_lower = value_[leaving] < lb_[leaving];
      compute_pivot_row(r);
      const int q = choose_entering(to_lower, bland);
      if (q < 0) return LpStatus::Infeasible;
      pivot(r, q, to_lower);
      ++iterations_;
      const double obj = objective_internal();
      if (obj > last_obj + 1e-9) {
        last_obj = obj;
        stall = 0;
      } else {
        ++stall;
      }
      if (since_refactor_ >= 100) {
        if (!refactor()) reset_to_slack_basis();
        restore_dual_feasibility();
        compute_basic_values();
      }
    }
  }


  double objective_internal() const {
    double s = 0.0;
    for (int j = 0; j < n_; ++j) s += cost_[j] * value_[j];
    return s;
  }

  void reset_to_slack_basis() {
    const int total = n_ + m_;
    head_.resize(m_);
    pos_.assign(total, -1);
    binv_.assign(static_cast<std::size_t>(m_) * m_, 0.0);
    for (int i = 0; i < m_; ++i) {
      head_[i] = n_ + i;
      pos_[n_ + i] = i;
      binv_[idx(i, i)] = -1.0;
    }
    since_refactor_ = 0;
    compute_reduced_costs();
    for (int j = 0; j < n_; ++j) place_nonbasic(j);
  }

  std::size_t idx(int r, int c) const { return static_cast<std::size_t>(r) * m_ + c; }

  // Reduced costs within kDualTol count as zero; such columns stay at the
  // bound they already occupy, otherwise refactorization noise flips them.
  void place_nonbasic(int j) {
    constexpr double kDualTol = 1e-9;
    if (d_[j] > kDualTol) value_[j] = lb_[j];
    else if (d_[j] < -kDualTol) value_[j] = ub_[j];
    else if (value_[j] != lb_[j] && value_[j] != ub_[j])
      value_[j] = std::abs(value_[j] - lb_[j]) <= std::abs(value_[j] - ub_[j]) ? lb_[j] : ub_[j];
  }

  void restore_dual_feasibility() {
    for (int j = 0; j < n_ + m_; ++j)
      if (pos_[j] < 0) place_nonbasic(j);
  }

  void compute_reduced_costs() {
    std::vector<double> y(m_, 0.0);
    for (int r = 0; r < m_; ++r) {
      const double c = cost_[head_[r]];
      if (c == 0.0) continue;
      for (int k = 0; k < m_; ++k) y[k] += c * binv_[idx(r, k)];
    }
    d_.assign(n_ + m_, 0.0);
    for (int j = 0; j < n_; ++j) {
      double s = cost_[j];
      for (const Entry& e : cols_[j]) s -= y[e.row] * e.coef;
      d_[j] = s;
    }
    for (int i = 0; i < m_; ++i) d_[n_ + i] = y[i];
    for (int r = 0; r < m_; ++r) d_[head_[r]] = 0.0;
  }

  void compute_basic_values() {
    std::vector<double> w(m_, 0.0);
    for (int j = 0; j < n_; ++j) {
      if (pos_[j] >= 0 || value_[j] == 0.0) continue;
      for (const Entry& e : cols_[j]) w[e.row] += e.coef * value_[j];
    }
    for (int i = 0; i < m_; ++i)
      if (pos_[n_ + i] < 0) w[i] -= value_[n_ + i];
    for (int r = 0; r < m_; ++r) {
      double s = 0.0;
      const double* row = &binv_[idx(r, 0)];
      for (int k = 0; k < m_; ++k) s += row[k] * w[k];
      value_[head_[r]] = -s;
    }
  }

  int choose_leaving(bool bland) const {
    int best = -1;
    double best_inf = tol_.feasibility;
    for (int r = 0; r < m_; ++r) {
      const int j = head_[r];
      const double inf = std::max(lb_[j] - value_[j], value_[j] - ub_[j]);
      if (inf <= tol_.feasibility) continue;
      if (bland) {
        if (best < 0 || j < head_[best]) best = r;
      } else if (inf > best_inf) {
        best_inf = inf;
        best = r;
      }
    }
    return best;
  }

  void compute_pivot_row(int r) {
    alpha_.assign(n_ + m_, 0.0);
    const double* rho = &binv_[idx(r, 0)];
    for (int j = 0; j < n_; ++j) {
      if (pos_[j] >= 0) continue;
      double s = 0.0;
      for (const Entry& e : cols_[j]) s += rho[e.row] * e.coef;
      alpha_[j] = s;
    }
    for (int i = 0; i < m_; ++i)
      if (pos_[n_ + i] < 0) alpha_[n_ + i] = -rho[i];
  }

  // The basic value in the leaving row moves as -alpha_j per unit of x_j.
  int choose_entering(bool to_lower, bool bland) const {
    constexpr double kPivotTol = 1e-9;
    int best = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    double best_abs = 0.0;
    for (int j = 0; j < n_ + m_; ++j) {
      if (pos_[j] >= 0) continue;
      if (ub_[j] - lb_[j] <= 0.0) continue;
      const double a = alpha_[j];
      if (std::abs(a) <= kPivotTol) continue;
      const bool at_upper = value_[j] >= ub_[j] && !(value_[j] <= lb_[j]);
      // needed direction for the basic value: up when leaving to lower bound
      const double effect = -a;  // change in basic value when x_j increases
      bool ok;
      if (to_lower) ok = at_upper ? effect < 0 : effect > 0;
      else ok = at_upper ? effect > 0 : effect < 0;
      if (!ok) continue;
      const double ratio = std::abs(d_[j]) / std::abs(a);
      if (ratio < best_ratio - 1e-12) {
        best = j;
        best_ratio = ratio;
        best_abs = std::abs(a);
      } else if (ratio <= best_ratio + 1e-12) {
        if (bland ? j < best : std::abs(a) > best_abs) {
          best = j;
          best_ratio = std::min(best_ratio, ratio);
          best_abs = std::abs(a);
        }
      }
    }
    return best;
  }

  void pivot(int r, int q, bool to_lower) {
    const int leaving = head_[r];
    // entering column in the current basis
    std::vector<double> tau(m_, 0.0);
    if (q < n_) {
      for (const Entry& e : cols_[q])
        for (int i = 0; i < m_; ++i) tau[i] += binv_[idx(i, e.row)] * e.coef;
    } else {
      const int k = q - n_;
      for (int i = 0; i < m_; ++i) tau[i] = -binv_[idx(i, k)];
    }
    const double piv = tau[r];
    // primal step: x_q moves until the leaving variable sits on its bound
    const double target = to_lower ? lb_[leaving] : ub_[leaving];
    const double theta = (value_[leaving] - target) / piv;
    for (int i = 0; i < m_; ++i)
      if (tau[i] != 0.0) value_[head_[i]] -= theta * tau[i];
    value_[q] += theta;
    double* prow = &binv_[idx(r, 0)];
    for (int k = 0; k < m_; ++k) prow[k] /= piv;
    for (int i = 0; i < m_; ++i) {
      if (i == r || tau[i] == 0.0) continue;
      double* row = &binv_[idx(i, 0)];
      const double f = tau[i];
      for (int k = 0; k < m_; ++k) row[k] -= f * prow[k];
    }

    const double step = d_[q] / alpha_[q];
    for (int j = 0; j < n_ + m_; ++j)
      if (pos_[j] < 0 && alpha_[j] != 0.0) d_[j] -= step * alpha_[j];
    d_[leaving] = -step;
    d_[q] = 0.0;

    head_[r] = q;
    pos_[q] = r;
    pos_[leaving] = -1;
    value_[leaving] = target;
    ++since_refactor_;
  }

  /// Rebuilds the basis inverse. Basic logicals are unit columns, so only the
  /// square block K of basic structurals over the rows without a basic logical
  /// is inverted: B^-1 = [[K^-1, 0], [M K^-1, -I]] with M the remaining rows.
  /// Returns false when the basis is numerically singular.
  bool refactor() {
    std::vector<int> kernel_pos;             // basis positions holding structurals
    std::vector<int> row_slot(m_, -1);       // row -> index in K, rows without basic logical
    std::vector<int> rows;
    for (int r = 0; r < m_; ++r)
      if (head_[r] < n_) kernel_pos.push_back(r);
    for (int i = 0; i < m_; ++i)
      if (pos_[n_ + i] < 0) {
        row_slot[i] = static_cast<int>(rows.size());
        rows.push_back(i);
      }
    const int s = static_cast<int>(kernel_pos.size());
    if (static_cast<int>(rows.size()) != s) return false;

    // K[q][p] = A[rows[q]][head[kernel_pos[p]]], inverted in place alongside inv
    std::vector<double> k(static_cast<std::size_t>(s) * s, 0.0), inv(static_cast<std::size_t>(s) * s, 0.0);
    auto at = [s](std::vector<double>& v, int a, int b) -> double& { return v[static_cast<std::size_t>(a) * s + b]; };
    for (int p = 0; p < s; ++p)
      for (const Entry& e : cols_[head_[kernel_pos[p]]])
        if (row_slot[e.row] >= 0) at(k, row_slot[e.row], p) = e.coef;
    for (int q = 0; q < s; ++q) at(inv, q, q) = 1.0;
    for (int c = 0; c < s; ++c) {
      int piv_row = c;
      for (int i = c + 1; i < s; ++i)
        if (std::abs(at(k, i, c)) > std::abs(at(k, piv_row, c))) piv_row = i;
      if (std::abs(at(k, piv_row, c)) < 1e-11) return false;
      if (piv_row != c) {
        std::swap_ranges(&at(k, piv_row, 0), &at(k, piv_row, 0) + s, &at(k, c, 0));
        std::swap_ranges(&at(inv, piv_row, 0), &at(inv, piv_row, 0) + s, &at(inv, c, 0));
      }
      const double piv = at(k, c, c);
      double* kc = &at(k, c, 0);
      double* ic = &at(inv, c, 0);
      for (int j = c; j < s; ++j) kc[j] /= piv;
      for (int j = 0; j < s; ++j) ic[j] /= piv;
      for (int i = 0; i < s; ++i) {
        if (i == c) continue;
        const double f = at(k, i, c);
        if (f == 0.0) continue;
        double* ki = &at(k, i, 0);
        double* ii = &at(inv, i, 0);
        for (int j = c; j < s; ++j) ki[j] -= f * kc[j];
        for (int j = 0; j < s; ++j) ii[j] -= f * ic[j];
      }
    }
    // inv is now K^-1: rows follow kernel columns p, columns follow kernel rows q

    binv_.assign(static_cast<std::size_t>(m_) * m_, 0.0);
    for (int p = 0; p < s; ++p) {
      double* out = &binv_[idx(kernel_pos[p], 0)];
      const double* src = &at(inv, p, 0);
      for (int q = 0; q < s; ++q) out[rows[q]] = src[q];
    }
    for (int i = 0; i < m_; ++i)
      if (pos_[n_ + i] >= 0) binv_[idx(pos_[n_ + i], i)] = -1.0;
    for (int p = 0; p < s; ++p) {
      const double* src = &at(inv, p, 0);
      for (const Entry& e : cols_[head_[kernel_pos[p]]]) {
        if (row_slot[e.row] >= 0) continue;
        double* out = &binv_[idx(pos_[n_ + e.row], 0)];
        for (int q = 0; q < s; ++q) out[rows[q]] += e.coef * src[q];
      }
    }
    since_refactor_ = 0;
    compute_reduced_costs();
    return true;
  }

  Tolerances tol_;
  int n_ = 0;
  int m_ = 0;
  std::vector<std::vector<Entry>> cols_;
  std::vector<double> lb_, ub_, cost_, true_cost_, perturbed_cost_, value_, d_, alpha_;
  std::vector<int> head_, pos_;
  std::vector<double> binv_;
  int since_refactor_ = 0;
  long iterations_ = 0;
  bool trivially_infeasible_ = false;
};

}  // namespace rkep::milp
