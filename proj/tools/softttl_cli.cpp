// Command-line front end: solves instances, reproduces the profile /
// shape-sweep / fairness-table experiments, and runs Monte-Carlo
// validation. All outputs are deterministic for a fixed config and seed.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>

#include "softttl/experiments.hpp"
#include "softttl/oracle.hpp"
#include "softttl/serialization.hpp"
#include "softttl/solver_constrained.hpp"
#include "softttl/solver_soft.hpp"

namespace {

namespace fs = std::filesystem;
using namespace softttl;

struct GlobalOpts {
  std::string config_path;
  std::string out_dir = "out";
  std::optional<double> capacity;
  std::optional<std::string> alpha;
  std::optional<double> shape;
  std::optional<int> K;
  std::optional<double> T;
  std::optional<std::uint64_t> seed;
  int threads = 0;
};

ExperimentConfig build_config(const GlobalOpts& g) {
  ExperimentConfig cfg = g.config_path.empty()
                             ? ExperimentConfig::defaults()
                             : ExperimentConfig::load(g.config_path);
  if (g.capacity) cfg.instance.capacity = *g.capacity;
  if (g.alpha) {
    if (*g.alpha == "maxmin") {
      cfg.instance.fairness = Fairness::max_min();
    } else {
      cfg.instance.fairness = Fairness::alpha_fair(std::stod(*g.alpha));
    }
  }
  if (g.K) cfg.instance.K = *g.K;
  if (g.T) cfg.instance.T = *g.T;
  if (g.shape) cfg.set_shape(*g.shape);
  if (g.seed) cfg.sim.seed = *g.seed;
  cfg.instance.validate();
  for (const auto& f : cfg.instance.files) {
    for (const auto& w : f.dist.warnings()) {
      std::cerr << "warning: " << w << "\n";
    }
  }
  return cfg;
}

void write_file(const fs::path& path, const std::string& contents) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << contents;
  if (!out) throw std::runtime_error("cannot write " + path.string());
  std::cout << "wrote " << path.string() << "\n";
}

PolicyMode parse_mode(const std::string& s) {
  if (s == "soft") return PolicyMode::kSoft;
  if (s == "fractional") return PolicyMode::kFractional;
  if (s == "ttl") return PolicyMode::kTtl;
  throw CLI::ValidationError("policy must be soft, fractional or ttl");
}

SolveResult solve_mode(const Instance& inst, PolicyMode mode) {
  switch (mode) {
    case PolicyMode::kSoft: return solve_soft(inst);
    case PolicyMode::kFractional: return solve_fractional(inst);
    case PolicyMode::kTtl: return solve_ttl(inst);
  }
  throw std::logic_error("unreachable");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Utility-optimal time-varying fractional cache eviction policies "
      "(soft-TTL) with TTL and fractional-TTL baselines"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--config", g.config_path, "JSON experiment config");
  app.add_option("--out", g.out_dir, "output directory")
      ->capture_default_str();
  app.add_option("--seed", g.seed, "simulation seed override");
  app.add_option("--threads", g.threads, "worker threads (0 = default)");
  app.add_option("--capacity", g.capacity, "cache capacity override");
  app.add_option("--alpha", g.alpha, "fairness override (number or 'maxmin')");
  app.add_option("--shape", g.shape, "Weibull shape override for all files");
  app.add_option("--K", g.K, "number of policy bins override");
  app.add_option("--T", g.T, "bin width override (seconds)");

  std::string policy = "soft";
  auto* solve_cmd =
      app.add_subcommand("solve", "solve one instance and dump the result");
  solve_cmd->add_option("--policy", policy,
                        "policy class: soft, fractional, ttl")
      ->capture_default_str();

  auto* singlerun_cmd = app.add_subcommand(
      "singlerun", "optimal policy profiles of all three classes (CSV)");

  std::string grid_spec;
  auto* sweep_cmd = app.add_subcommand(
      "shape-sweep", "aggregate utility vs Weibull shape (CSV)");
  sweep_cmd->add_option(
      "--grid", grid_spec,
      "comma-separated shape values (default 0.05,0.10,...,1.00)");

  auto* table_cmd = app.add_subcommand(
      "fairness-table",
      "per-file utilities across the fairness ladder, rates (1,2,3)");

  std::string validate_policy = "soft";
  auto* validate_cmd = app.add_subcommand(
      "validate", "Monte-Carlo validation of the solved policies (JSON)");
  validate_cmd
      ->add_option("--policy", validate_policy,
                   "policy class: soft, fractional, ttl")
      ->capture_default_str();

  std::string oracle_mode = "soft";
  int grid_steps = 32;
  auto* oracle_cmd = app.add_subcommand(
      "oracle", "exhaustive grid search (small instances only)");
  oracle_cmd->add_option("--mode", oracle_mode, "soft, fractional or ttl")
      ->capture_default_str();
  oracle_cmd->add_option("--grid-steps", grid_steps, "fraction grid steps")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
  if (g.threads > 0) omp_set_num_threads(g.threads);
#endif

  try {
    const ExperimentConfig cfg = build_config(g);
    const fs::path out_dir(g.out_dir);

    if (solve_cmd->parsed()) {
      const PolicyMode mode = parse_mode(policy);
      const SolveResult res = solve_mode(cfg.instance, mode);
      write_file(out_dir / ("solution_" + policy + ".json"),
                 to_json(res).dump(2) + "\n");
      for (std::size_t i = 0; i < res.policies.size(); ++i) {
        write_file(out_dir / ("policy_" + policy + "_file" +
                              std::to_string(i) + ".csv"),
                   res.policies[i].to_csv());
      }
      std::printf("%s aggregate: %.10g  occupancy: %.10g / %.10g\n",
                  policy.c_str(), res.aggregate, res.total_occupancy(),
                  cfg.instance.capacity);
    } else if (singlerun_cmd->parsed()) {
      write_file(out_dir / "singlerun.csv", run_singlerun(cfg).to_csv());
    } else if (sweep_cmd->parsed()) {
      std::vector<double> grid;
      if (grid_spec.empty()) {
        grid = default_shape_grid();
      } else {
        std::stringstream ss(grid_spec);
        std::string item;
        while (std::getline(ss, item, ',')) grid.push_back(std::stod(item));
      }
      write_file(out_dir / "shape.csv", run_shape_sweep(cfg, grid).to_csv());
    } else if (table_cmd->parsed()) {
      const FairnessTable table = run_fairness_table(cfg);
      write_file(out_dir / "fairness.csv", table.to_csv());
      std::cout << table.to_text();
    } else if (validate_cmd->parsed()) {
      const auto report = run_validate(cfg, parse_mode(validate_policy));
      write_file(out_dir / "validation.json", report.dump(2) + "\n");
      for (const auto& f : report.at("files")) {
        std::printf("z_utility=%+.3f z_occupancy=%+.3f\n",
                    f.at("z_utility").get<double>(),
                    f.at("z_occupancy").get<double>());
      }
    } else if (oracle_cmd->parsed()) {
      OracleOptions opt;
      opt.grid_steps = grid_steps;
      const SolveResult res =
          brute_force_oracle(cfg.instance, parse_mode(oracle_mode), opt);
      write_file(out_dir / "oracle.json", to_json(res).dump(2) + "\n");
      std::printf("oracle aggregate: %.10g (nodes: %lld)\n", res.aggregate,
                  res.diag.nodes_explored);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
