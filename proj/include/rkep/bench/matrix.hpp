#pragma once

// Runs every (instance, configuration) cell, optionally on a small worker
// pool. Records come back in cell order whatever the scheduling.

#include <algorithm>
#include <atomic>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "rkep/bench/record.hpp"
#include "rkep/solvers/robust.hpp"

namespace rkep {

struct NamedInstance {
  std::string name;
  CompatibilityGraph graph;
};

struct MatrixOptions {
  int workers = 1;
  /// Called once per finished record, serialized.
  std::function<void(const BenchRecord&)> on_record;
};

inline BenchRecord make_record(const NamedInstance& inst, const RobustConfig& cfg, const RobustResult& r) {
  BenchRecord rec;
  rec.instance = inst.name;
  rec.n_pairs = inst.graph.num_pairs();
  rec.n_ndds = inst.graph.num_ndds();
  rec.n_arcs = static_cast<int>(inst.graph.arcs().size());
  rec.K = cfg.max_cycle;
  rec.L = cfg.max_chain;
  rec.B = cfg.budget;
  rec.policy = to_string(cfg.policy);
  rec.encoding = to_string(cfg.encoding);
  rec.method = to_string(cfg.method);
  rec.lifting = cfg.lifting;
  rec.status = to_string(r.status);
  if (r.status == RobustStatus::Optimal) rec.objective = r.z_star;
  rec.time_total = r.stats.time_total;
  rec.time_stage2 = r.stats.time_stage2;
  rec.time_stage3 = r.stats.time_stage3;
  rec.n_attacks = r.stats.n_attacks;
  rec.n_subproblems = r.stats.n_subproblems;
  rec.bb_nodes = r.stats.bb_nodes;
  rec.seed = cfg.seed;
  return rec;
}

inline BenchRecord run_cell(const NamedInstance& inst, const RobustConfig& cfg) {
  return make_record(inst, cfg, solve_robust(inst.graph, cfg));
}

inline std::vector<BenchRecord> run_matrix(const std::vector<NamedInstance>& instances,
                                           const std::vector<RobustConfig>& configs, const MatrixOptions& opt = {}) {
  const std::size_t cells = instances.size() * configs.size();
  std::vector<BenchRecord> out(cells);
  std::atomic<std::size_t> next{0};
  std::mutex emit;
  std::exception_ptr failure;
  auto work = [&] {
    while (true) {
      const std::size_t k = next++;
      if (k >= cells) return;
      try {
        BenchRecord rec = run_cell(instances[k / configs.size()], configs[k % configs.size()]);
        std::lock_guard lock(emit);
        if (opt.on_record) opt.on_record(rec);
        out[k] = std::move(rec);
      } catch (...) {
        std::lock_guard lock(emit);
        if (!failure) failure = std::current_exception();
        next = cells;
      }
    }
  };
  const int n = std::max(1, std::min<int>(opt.workers, static_cast<int>(cells)));
  if (n == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace rkep
