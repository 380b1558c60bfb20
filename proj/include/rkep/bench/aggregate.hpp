#pragma once

// Per-configuration summaries in the shape of the usual runtime tables:
// solved counts, shifted geometric mean of run times, and mean effort over
// solved instances.

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "rkep/bench/record.hpp"

namespace rkep {

/// prod(t_i + s)^(1/n) - s. Constant inputs come back unchanged.
inline double shifted_geometric_mean(std::vector<double> times, double shift) {
  if (shift < 0) throw Error("shift must be non-negative");
  if (times.empty()) throw Error("shifted geometric mean of no values");
  std::sort(times.begin(), times.end());
  if (times.front() == times.back()) return times.front();
  double log_sum = 0.0;
  for (double t : times) {
    if (t + shift <= 0) throw Error("shifted value must be positive");
    log_sum += std::log(t + shift);
  }
  return std::exp(log_sum / static_cast<double>(times.size())) - shift;
}

struct SummaryRow {
  int n_vertices = 0;
  int K = 0, L = 0, B = 0;
  std::string policy, encoding, method;
  bool lifting = false;
  int count = 0;
  int solved = 0;
  double sgm_time = 0.0;  // over every record in the group
  std::optional<double> mean_attacks, mean_subproblems, mean_nodes;  // over solved records
};

inline std::vector<SummaryRow> aggregate(const std::vector<BenchRecord>& records, double shift = 10.0) {
  if (shift < 0) throw Error("shift must be non-negative");
  using Key = std::tuple<int, int, int, int, std::string, std::string, std::string, bool>;
  std::map<Key, std::vector<const BenchRecord*>> groups;
  for (const auto& r : records)
    groups[{r.n_pairs + r.n_ndds, r.K, r.L, r.B, r.policy, r.encoding, r.method, r.lifting}].push_back(&r);
  std::vector<SummaryRow> out;
  for (const auto& [key, rs] : groups) {
    SummaryRow row;
    std::tie(row.n_vertices, row.K, row.L, row.B, row.policy, row.encoding, row.method, row.lifting) = key;
    row.count = static_cast<int>(rs.size());
    std::vector<double> times;
    std::vector<long> attacks, subs, nodes;
    for (const BenchRecord* r : rs) {
      times.push_back(r->time_total);
      if (!r->solved()) continue;
      ++row.solved;
      attacks.push_back(r->n_attacks);
      subs.push_back(r->n_subproblems);
      nodes.push_back(r->bb_nodes);
    }
    row.sgm_time = shifted_geometric_mean(times, shift);
    auto mean = [](const std::vector<long>& v) -> std::optional<double> {
      if (v.empty()) return std::nullopt;
      long s = 0;
      for (long x : v) s += x;
      return static_cast<double>(s) / static_cast<double>(v.size());
    };
    row.mean_attacks = mean(attacks);
    row.mean_subproblems = mean(subs);
    row.mean_nodes = mean(nodes);
    out.push_back(std::move(row));
  }
  return out;
}

namespace detail {

inline std::string fixed(std::optional<double> v, int digits) {
  if (!v) return "—";
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << *v;
  return s.str();
}

}  // namespace detail

inline std::string summary_csv(const std::vector<SummaryRow>& rows) {
  std::ostringstream o;
  o << "n_vertices,K,L,B,policy,encoding,method,lifting,count,solved,sgm_time_s,mean_attacks,mean_subproblems,"
       "mean_bb_nodes\n";
  for (const auto& r : rows) {
    auto opt = [](std::optional<double> v) { return v ? detail::fixed(v, 4) : std::string(); };
    o << r.n_vertices << ',' << r.K << ',' << r.L << ',' << r.B << ',' << r.policy << ',' << r.encoding << ','
      << r.method << ',' << (r.lifting ? "on" : "off") << ',' << r.count << ',' << r.solved << ','
      << detail::fixed(r.sgm_time, 4) << ',' << opt(r.mean_attacks) << ',' << opt(r.mean_subproblems) << ','
      << opt(r.mean_nodes) << '\n';
  }
  return o.str();
}

/// Aligned plain-text table, one line per group.
inline std::string summary_table(const std::vector<SummaryRow>& rows) {
  std::vector<std::vector<std::string>> cells{
      {"|V|", "K", "L", "B", "policy", "method", "lift", "solved", "time(s)", "#att.", "#sub.", "#nodes"}};
  for (const auto& r : rows) {
    const std::string method = r.method == "cut" ? "cut-" + r.encoding : r.method + "-" + r.encoding;
    cells.push_back({std::to_string(r.n_vertices), std::to_string(r.K), std::to_string(r.L), std::to_string(r.B),
                     r.policy, method, r.lifting ? "on" : "off",
                     std::to_string(r.solved) + "/" + std::to_string(r.count), detail::fixed(r.sgm_time, 2),
                     detail::fixed(r.mean_attacks, 1), detail::fixed(r.mean_subproblems, 1),
                     detail::fixed(r.mean_nodes, 1)});
  }
  // width in code points so the dash placeholder lines up
  auto width = [](const std::string& s) {
    return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](char c) { return (c & 0xC0) != 0x80; }));
  };
  std::vector<std::size_t> w(cells[0].size(), 0);
  for (const auto& row : cells)
    for (std::size_t k = 0; k < row.size(); ++k) w[k] = std::max(w[k], width(row[k]));
  std::ostringstream o;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    for (std::size_t k = 0; k < cells[i].size(); ++k) {
      if (k) o << "  ";
      const std::string& c = cells[i][k];
      const std::string pad(w[k] - width(c), ' ');
      o << (k < 7 ? c + pad : pad + c);
    }
    o << '\n';
    if (i == 0) {
      std::size_t total = 0;
      for (auto x : w) total += x + 2;
      o << std::string(total - 2, '-') << '\n';
    }
  }
  return o.str();
}

}  // namespace rkep
