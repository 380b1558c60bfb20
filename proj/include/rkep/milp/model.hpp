#pragma once

// 0-1 mixed-integer linear models. All variables carry finite bounds; rows
// can be appended between solves.

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "rkep/graph.hpp"

namespace rkep::milp {

struct VarId {
  int value = -1;
  bool valid() const { return value >= 0; }
  auto operator<=>(const VarId&) const = default;
};

struct RowId {
  int value = -1;
  auto operator<=>(const RowId&) const = default;
};

enum class Sense { Maximize, Minimize };
enum class VarKind { Binary, Continuous };
enum class Relation { LessEqual, GreaterEqual, Equal };

struct Term {
  VarId var;
  double coef = 0.0;
};

struct Variable {
  VarKind kind = VarKind::Continuous;
  double lb = 0.0;
  double ub = 0.0;
  double obj = 0.0;
  std::string name;
};

struct Row {
  std::vector<Term> terms;
  Relation rel = Relation::LessEqual;
  double rhs = 0.0;
  std::string name;
};

inline constexpr double kInfiniteBound = 1e30;

class Model {
 public:
  explicit Model(Sense sense = Sense::Maximize) : sense_(sense) {}

  Sense sense() const { return sense_; }
  void set_sense(Sense s) { sense_ = s; }

  VarId add_variable(VarKind kind, double lb, double ub, double obj, std::string name = {}) {
    if (!(lb <= ub)) throw Error("variable bounds are inverted: lb=" + std::to_string(lb) + " ub=" + std::to_string(ub));
    if (std::abs(lb) >= kInfiniteBound || std::abs(ub) >= kInfiniteBound)
      throw Error("variable bounds must be finite");
    if (kind == VarKind::Binary && (lb < 0.0 || ub > 1.0 || lb != std::floor(lb) || ub != std::floor(ub)))
      throw Error("binary variable bounds must lie in {0,1}");
    if (name.empty()) name = (kind == VarKind::Binary ? "b" : "c") + std::to_string(vars_.size());
    vars_.push_back({kind, lb, ub, obj, std::move(name)});
    return VarId{static_cast<int>(vars_.size()) - 1};
  }

  VarId add_binary(double obj = 0.0, std::string name = {}) {
    return add_variable(VarKind::Binary, 0.0, 1.0, obj, std::move(name));
  }
  VarId add_continuous(double lb, double ub, double obj = 0.0, std::string name = {}) {
    return add_variable(VarKind::Continuous, lb, ub, obj, std::move(name));
  }

  /// Appends a row; duplicate variables are merged and zero coefficients dropped.
  RowId add_row(std::vector<Term> terms, Relation rel, double rhs, std::string name = {}) {
    std::map<int, double> merged;
    for (const Term& t : terms) {
      if (t.var.value < 0 || t.var.value >= num_vars())
        throw Error("row references unknown variable " + std::to_string(t.var.value));
      merged[t.var.value] += t.coef;
    }
    Row row;
    row.rel = rel;
    row.rhs = rhs;
    row.name = name.empty() ? "r" + std::to_string(rows_.size()) : std::move(name);
    for (const auto& [v, c] : merged)
      if (c != 0.0) row.terms.push_back({VarId{v}, c});
    rows_.push_back(std::move(row));
    return RowId{static_cast<int>(rows_.size()) - 1};
  }

  void set_bounds(VarId v, double lb, double ub) {
    check(v);
    if (!(lb <= ub)) throw Error("variable bounds are inverted");
    vars_[v.value].lb = lb;
    vars_[v.value].ub = ub;
  }

  /// Locks a variable to a value.
  void fix(VarId v, double value) { set_bounds(v, value, value); }

  void set_objective(VarId v, double coef) {
    check(v);
    vars_[v.value].obj = coef;
  }

  /// Declares that every feasible solution with integral binaries has an
  /// integral objective value; the search prunes on that basis.
  void set_integral_objective(bool flag) { integral_objective_ = flag; }
  bool integral_objective() const { return integral_objective_; }

  int num_vars() const { return static_cast<int>(vars_.size()); }
  int num_rows() const { return static_cast<int>(rows_.size()); }
  const Variable& var(VarId v) const { return vars_[v.value]; }
  const Variable& var(int j) const { return vars_[j]; }
  const Row& row(RowId r) const { return rows_[r.value]; }
  const Row& row(int i) const { return rows_[i]; }
  const std::vector<Variable>& variables() const { return vars_; }
  const std::vector<Row>& rows() const { return rows_; }

  int num_binaries() const {
    return static_cast<int>(std::count_if(vars_.begin(), vars_.end(),
                                          [](const Variable& v) { return v.kind == VarKind::Binary; }));
  }

  double evaluate_objective(const std::vector<double>& x) const {
    double s = 0.0;
    for (int j = 0; j < num_vars(); ++j) s += vars_[j].obj * x[j];
    return s;
  }

  double row_activity(int i, const std::vector<double>& x) const {
    double s = 0.0;
    for (const Term& t : rows_[i].terms) s += t.coef * x[t.var.value];
    return s;
  }

  /// Largest violation of any bound or row by `x`.
  double max_violation(const std::vector<double>& x) const {
    double worst = 0.0;
    for (int j = 0; j < num_vars(); ++j) {
      worst = std::max(worst, vars_[j].lb - x[j]);
      worst = std::max(worst, x[j] - vars_[j].ub);
    }
    for (int i = 0; i < num_rows(); ++i) {
      const double a = row_activity(i, x);
      const Row& r = rows_[i];
      if (r.rel != Relation::GreaterEqual) worst = std::max(worst, a - r.rhs);
      if (r.rel != Relation::LessEqual) worst = std::max(worst, r.rhs - a);
    }
    return worst;
  }

 private:
  void check(VarId v) const {
    if (v.value < 0 || v.value >= num_vars()) throw Error("unknown variable handle " + std::to_string(v.value));
  }

  Sense sense_;
  std::vector<Variable> vars_;
  std::vector<Row> rows_;
  bool integral_objective_ = false;
};

/// Writes the model in CPLEX LP text format.
inline void write_lp(const Model& m, std::ostream& os) {
  auto term = [&](double c, const std::string& name, bool first) {
    if (c < 0) os << (first ? "- " : " - ");
    else if (!first) os << " + ";
    if (std::abs(c) != 1.0) os << std::abs(c) << " ";
    os << name;
  };
  os << (m.sense() == Sense::Maximize ? "Maximize\n" : "Minimize\n") << " obj: ";
  bool first = true;
  for (const auto& v : m.variables()) {
    if (v.obj == 0.0) continue;
    term(v.obj, v.name, first);
    first = false;
  }
  if (first) os << "0";
  os << "\nSubject To\n";
  for (const auto& r : m.rows()) {
    os << " " << r.name << ": ";
    bool f = true;
    for (const Term& t : r.terms) {
      term(t.coef, m.var(t.var).name, f);
      f = false;
    }
    if (f) os << "0 " << m.variables().front().name;
    os << (r.rel == Relation::LessEqual ? " <= " : r.rel == Relation::GreaterEqual ? " >= " : " = ") << r.rhs
       << "\n";
  }
  os << "Bounds\n";
  for (const auto& v : m.variables()) os << " " << v.lb << " <= " << v.name << " <= " << v.ub << "\n";
  os << "Binaries\n";
  for (const auto& v : m.variables())
    if (v.kind == VarKind::Binary) os << " " << v.name << "\n";
  os << "End\n";
}

}  // namespace rkep::milp
