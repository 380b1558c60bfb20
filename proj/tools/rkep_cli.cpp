// Command-line front end: solve one instance, generate instances, run an
// experiment matrix, or summarize result CSVs.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "rkep/rkep.hpp"

namespace fs = std::filesystem;
using namespace rkep;

namespace {

Policy parse_policy(const std::string& s) { return s == "fse" ? Policy::FixSuccessfulExchanges : Policy::FullRecourse; }
Encoding parse_encoding(const std::string& s) { return s == "picef" ? Encoding::PICEF : Encoding::CC; }
SubproblemMethod parse_method(const std::string& s) {
  if (s == "bb") return SubproblemMethod::BranchAndBound;
  if (s == "oracle") return SubproblemMethod::Oracle;
  return SubproblemMethod::CuttingPlane;
}

nlohmann::json to_json(const KepSolution& x) {
  auto out = nlohmann::json::array();
  for (const auto& e : x.exchanges())
    out.push_back({{"kind", e.is_cycle() ? "cycle" : "chain"}, {"vertices", e.vertices}});
  return out;
}

nlohmann::json to_json(const RobustResult& r, const RobustConfig& c) {
  nlohmann::json attacks = nlohmann::json::array();
  for (const auto& u : r.attacks) attacks.push_back(u.vertices());
  return {{"status", to_string(r.status)},
          {"objective", r.z_star},
          {"upper_bound", r.upper_bound},
          {"initial_solution", to_json(r.initial)},
          {"worst_attack", r.worst_attack.vertices()},
          {"attacks", attacks},
          {"config",
           {{"cycle_len", c.max_cycle},
            {"chain_len", c.max_chain},
            {"budget", c.budget},
            {"policy", to_string(c.policy)},
            {"formulation", to_string(c.encoding)},
            {"method", to_string(c.method)},
            {"lifting", c.lifting ? "on" : "off"},
            {"time_limit", c.time_limit},
            {"seed", c.seed}}},
          {"stats",
           {{"master_iterations", r.stats.master_iterations},
            {"n_attacks", r.stats.n_attacks},
            {"n_subproblems", r.stats.n_subproblems},
            {"n_cuts", r.stats.n_cuts},
            {"bb_nodes", r.stats.bb_nodes},
            {"time_total_s", r.stats.time_total},
            {"time_master_s", r.stats.time_master},
            {"time_stage2_s", r.stats.time_stage2},
            {"time_stage3_s", r.stats.time_stage3}}}};
}

void write_or_print(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
}

std::vector<std::string> expand_inputs(const std::vector<std::string>& inputs) {
  std::vector<std::string> files;
  for (const auto& in : inputs) {
    if (fs::is_directory(in)) {
      std::vector<std::string> found;
      for (const auto& entry : fs::directory_iterator(in)) {
        const auto ext = entry.path().extension();
        if (ext == ".kep" || ext == ".json") found.push_back(entry.path().string());
      }
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else {
      files.push_back(in);
    }
  }
  return files;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Robust kidney exchange with recourse"};
  app.require_subcommand(1);
  const std::vector<std::string> policies{"fr", "fse"}, formulations{"cc", "picef"},
      methods{"cut", "bb", "oracle"}, switches{"on", "off"};

  // solve
  auto* solve = app.add_subcommand("solve", "Solve one instance");
  std::string input, output, policy = "fr", formulation = "cc", method = "cut", lifting = "off", early = "on";
  RobustConfig cfg;
  solve->add_option("--input", input, "Instance file (.kep or .json)")->required()->check(CLI::ExistingFile);
  solve->add_option("--cycle-len", cfg.max_cycle, "Maximum cycle length in arcs")->capture_default_str();
  solve->add_option("--chain-len", cfg.max_chain, "Maximum chain length in arcs")->capture_default_str();
  solve->add_option("--budget", cfg.budget, "Attack budget")->capture_default_str();
  solve->add_option("--policy", policy)->check(CLI::IsMember(policies))->capture_default_str();
  solve->add_option("--formulation", formulation)->check(CLI::IsMember(formulations))->capture_default_str();
  solve->add_option("--method", method)->check(CLI::IsMember(methods))->capture_default_str();
  solve->add_option("--lifting", lifting)->check(CLI::IsMember(switches))->capture_default_str();
  solve->add_option("--early-exit", early)->check(CLI::IsMember(switches))->capture_default_str();
  solve->add_option("--time-limit", cfg.time_limit, "Seconds")->capture_default_str();
  solve->add_option("--seed", cfg.seed)->capture_default_str();
  solve->add_option("--output", output, "Write the JSON result here instead of stdout");

  // generate
  auto* gen = app.add_subcommand("generate", "Generate random instances");
  int pairs = 20, ndds = 2, count = 1;
  double density = 0.15;
  std::uint64_t seed = 1;
  std::string gen_output, gen_format = "kep";
  gen->add_option("--pairs", pairs)->capture_default_str();
  gen->add_option("--ndds", ndds)->capture_default_str();
  gen->add_option("--density", density)->check(CLI::Range(0.0, 1.0))->capture_default_str();
  gen->add_option("--seed", seed, "Seed of the first instance")->capture_default_str();
  gen->add_option("--count", count, "Number of instances; seeds are consecutive")->capture_default_str();
  gen->add_option("--format", gen_format)->check(CLI::IsMember({"kep", "json"}))->capture_default_str();
  gen->add_option("--output", gen_output, "File (one instance) or directory (several); stdout if omitted");

  // bench
  auto* bench = app.add_subcommand("bench", "Run an experiment matrix");
  std::vector<std::string> bench_inputs;
  std::vector<int> cyc{3}, chn{3}, bud{1};
  std::vector<std::string> pols{"fr"}, forms{"cc", "picef"}, meths{"cut"}, lifts{"off"};
  double bench_limit = 60.0;
  int jobs = 1;
  std::string bench_output;
  bench->add_option("--input", bench_inputs, "Instance files or directories")->required();
  bench->add_option("--cycle-len", cyc)->delimiter(',')->capture_default_str();
  bench->add_option("--chain-len", chn)->delimiter(',')->capture_default_str();
  bench->add_option("--budget", bud)->delimiter(',')->capture_default_str();
  bench->add_option("--policy", pols)->delimiter(',')->check(CLI::IsMember(policies))->capture_default_str();
  bench->add_option("--formulation", forms)->delimiter(',')->check(CLI::IsMember(formulations))->capture_default_str();
  bench->add_option("--method", meths)->delimiter(',')->check(CLI::IsMember(methods))->capture_default_str();
  bench->add_option("--lifting", lifts)->delimiter(',')->check(CLI::IsMember(switches))->capture_default_str();
  bench->add_option("--time-limit", bench_limit, "Seconds per run")->capture_default_str();
  bench->add_option("--seed", seed)->capture_default_str();
  bench->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  bench->add_option("--output", bench_output, "CSV file for the records")->required();

  // aggregate
  auto* agg = app.add_subcommand("aggregate", "Summarize result CSV files");
  std::vector<std::string> agg_inputs;
  double shift = 10.0;
  std::string agg_output;
  agg->add_option("--input", agg_inputs, "Result CSV files")->required()->check(CLI::ExistingFile);
  agg->add_option("--shift", shift, "Shift of the geometric mean")->check(CLI::NonNegativeNumber)->capture_default_str();
  agg->add_option("--output", agg_output, "Write the summary CSV here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) {
      cfg.policy = parse_policy(policy);
      cfg.encoding = parse_encoding(formulation);
      cfg.method = parse_method(method);
      cfg.lifting = lifting == "on";
      cfg.early_exit = early == "on";
      const auto graph = read_instance_file(input);
      const auto result = solve_robust(graph, cfg);
      std::cerr << "status " << to_string(result.status) << ", objective " << result.z_star << ", "
                << result.stats.n_attacks << " attacks, " << result.stats.time_total << " s\n";
      write_or_print(output, to_json(result, cfg).dump(2) + "\n");
      return 0;
    }
    if (*gen) {
      if (count < 1) throw Error("--count must be positive");
      const auto format = gen_format == "json" ? InstanceFormat::Json : InstanceFormat::Kep;
      if (count == 1 && (gen_output.empty() || !fs::is_directory(gen_output))) {
        const auto g = generate_instance(pairs, ndds, density, seed);
        if (gen_output.empty()) std::cout << render_instance(g, format);
        else write_instance_file(gen_output, g);
        return 0;
      }
      if (gen_output.empty()) throw Error("--output directory is required with --count > 1");
      fs::create_directories(gen_output);
      for (int k = 0; k < count; ++k) {
        const auto g = generate_instance(pairs, ndds, density, seed + k);
        const std::string name = "p" + std::to_string(pairs) + "_n" + std::to_string(ndds) + "_s" +
                                 std::to_string(seed + k) + (format == InstanceFormat::Json ? ".json" : ".kep");
        write_instance_file((fs::path(gen_output) / name).string(), g);
      }
      return 0;
    }
    if (*bench) {
      std::vector<NamedInstance> instances;
      for (const auto& f : expand_inputs(bench_inputs))
        instances.push_back({fs::path(f).stem().string(), read_instance_file(f)});
      if (instances.empty()) throw Error("no instance files found");
      std::vector<RobustConfig> configs;
      for (int k : cyc)
        for (int l : chn)
          for (int b : bud)
            for (const auto& p : pols)
              for (const auto& m : meths)
                for (const auto& f : forms)
                  for (const auto& lf : lifts) {
                    // lifting only changes the cut-generation recourse
                    if (lf == "on" && m != "cut") continue;
                    RobustConfig c;
                    c.max_cycle = k;
                    c.max_chain = l;
                    c.budget = b;
                    c.policy = parse_policy(p);
                    c.encoding = parse_encoding(f);
                    c.method = parse_method(m);
                    c.lifting = lf == "on";
                    c.time_limit = bench_limit;
                    c.seed = seed;
                    configs.push_back(c);
                  }
      std::ofstream out(bench_output);
      if (!out) throw Error("cannot write '" + bench_output + "'");
      out << csv_header() << '\n' << std::flush;
      MatrixOptions opt;
      opt.workers = jobs;
      opt.on_record = [&](const BenchRecord& r) {
        out << to_csv(r) << '\n' << std::flush;
        std::cerr << r.instance << " " << r.policy << "/" << r.method << "-" << r.encoding
                  << (r.lifting ? "+lift" : "") << " B=" << r.B << ": " << r.status << " "
                  << (r.objective ? std::to_string(*r.objective) : "-") << " (" << r.time_total << " s)\n";
      };
      const auto records = run_matrix(instances, configs, opt);
      std::cout << summary_table(aggregate(records, 10.0));
      return 0;
    }
    if (*agg) {
      std::vector<BenchRecord> records;
      for (const auto& f : agg_inputs) {
        std::ifstream in(f);
        if (!in) throw Error("cannot open '" + f + "'");
        auto part = read_csv(in);
        records.insert(records.end(), part.begin(), part.end());
      }
      const auto rows = aggregate(records, shift);
      std::cout << summary_table(rows);
      if (!agg_output.empty()) write_or_print(agg_output, summary_csv(rows));
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
