#pragma once

// Random small 0-1 models and an enumeration oracle for them. The models mix
// knapsack, covering and equality rows over binaries with an optional
// continuous epigraph variable Z (bounded by linear forms of the binaries),
// so the continuous part has a closed-form optimum for fixed binaries.

#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "rkep/milp/model.hpp"

namespace rkep::testing {

struct RandomMilp {
  milp::Model model;
  int num_binaries = 0;
  bool has_z = false;
  double z_ub = 0.0;
  // Z <= rhs_k + sum coef x   (maximize)  or  Z >= ... (minimize)
  std::vector<std::vector<double>> z_coefs;
  std::vector<double> z_consts;
};

inline RandomMilp make_random_milp(std::mt19937_64& rng, int max_binaries = 15) {
  std::uniform_int_distribution<int> nb(1, max_binaries);
  std::uniform_int_distribution<int> coef(-4, 6);
  std::uniform_int_distribution<int> small(0, 3);
  std::bernoulli_distribution coin(0.5);
  RandomMilp out;
  const int n = nb(rng);
  out.num_binaries = n;
  out.model.set_sense(coin(rng) ? milp::Sense::Maximize : milp::Sense::Minimize);
  std::vector<milp::VarId> x;
  for (int j = 0; j < n; ++j) x.push_back(out.model.add_binary(coef(rng)));
  out.has_z = coin(rng);
  milp::VarId z;
  if (out.has_z) {
    out.z_ub = 3.0 * n;
    const double zc = out.model.sense() == milp::Sense::Maximize ? 1 + small(rng) : 1 + small(rng);
    z = out.model.add_continuous(0.0, out.z_ub, zc);
    const int k = 1 + small(rng);
    for (int r = 0; r < k; ++r) {
      std::vector<milp::Term> terms{{z, 1.0}};
      std::vector<double> c(n, 0.0);
      for (int j = 0; j < n; ++j) {
        if (coin(rng)) continue;
        c[j] = coef(rng);
        terms.push_back({x[j], -c[j]});
      }
      const double konst = small(rng);
      out.z_coefs.push_back(c);
      out.z_consts.push_back(konst);
      out.model.add_row(terms,
                        out.model.sense() == milp::Sense::Maximize ? milp::Relation::LessEqual
                                                                   : milp::Relation::GreaterEqual,
                        konst);
    }
  }
  const int rows = small(rng) + 1;
  for (int r = 0; r < rows; ++r) {
    std::vector<milp::Term> terms;
    double total = 0.0;
    for (int j = 0; j < n; ++j) {
      if (coin(rng)) continue;
      const double c = 1 + small(rng);
      terms.push_back({x[j], c});
      total += c;
    }
    const int kind = small(rng);
    if (kind <= 1) {
      out.model.add_row(terms, milp::Relation::LessEqual, std::floor(total / 2));
    } else if (kind == 2) {
      out.model.add_row(terms, milp::Relation::GreaterEqual, std::min(total, 2.0));
    } else if (!terms.empty()) {
      std::vector<milp::Term> eq{terms.front()};
      if (terms.size() > 1) eq.push_back({terms.back().var, 1.0});
      eq.front().coef = 1.0;
      out.model.add_row(eq, milp::Relation::Equal, 1.0);
    }
  }
  return out;
}

/// Exhaustive optimum over all binary assignments; nullopt when infeasible.
inline std::optional<double> enumerate_optimum(const RandomMilp& p) {
  const auto& m = p.model;
  const bool maximize = m.sense() == milp::Sense::Maximize;
  std::optional<double> best;
  const int n = p.num_binaries;
  std::vector<double> x(m.num_vars(), 0.0);
  for (long mask = 0; mask < (1L << n); ++mask) {
    for (int j = 0; j < n; ++j) x[j] = (mask >> j) & 1;
    if (p.has_z) {
      // optimal Z for fixed binaries
      double lim = maximize ? p.z_ub : 0.0;
      for (std::size_t k = 0; k < p.z_coefs.size(); ++k) {
        double v = p.z_consts[k];
        for (int j = 0; j < n; ++j) v += p.z_coefs[k][j] * x[j];
        lim = maximize ? std::min(lim, v) : std::max(lim, v);
      }
      const double zc = m.var(n).obj;
      const bool want_high = maximize == (zc > 0);
      if (maximize) {
        if (lim < 0.0) continue;
        x[n] = want_high ? lim : 0.0;
      } else {
        if (lim > p.z_ub) continue;
        x[n] = want_high ? p.z_ub : lim;
      }
    }
    if (m.max_violation(x) > 1e-9) continue;
    const double v = m.evaluate_objective(x);
    if (!best || (maximize ? v > *best : v < *best)) best = v;
  }
  return best;
}

}  // namespace rkep::testing
