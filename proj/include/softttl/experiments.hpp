#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "softttl/instance.hpp"
#include "softttl/oracle.hpp"

namespace softttl {

struct SimulationSettings {
  double t_end = 1e5;
  int replications = 20;
  std::uint64_t seed = 12345;
};

// One experiment description: the instance plus Monte-Carlo settings.
// Defaults are the benchmark setup used throughout: three unit-size files
// with Weibull(shape 0.7) requests at unit rate, sqrt utility, C = 1.5,
// sum-utility fairness, K = 100, T = 0.03.
struct ExperimentConfig {
  Instance instance;
  SimulationSettings sim;

  static ExperimentConfig defaults();
  static ExperimentConfig from_json(const nlohmann::json& j);
  static ExperimentConfig load(const std::string& path);
  nlohmann::json to_json() const;

  // Replace every file's request law with a Weibull of the given shape,
  // keeping each file's rate.
  void set_shape(double shape);
};

// Optimal-policy profile of the first file under all three classes,
// sampled at the bin edges t = kT.
struct SingleRunResult {
  std::vector<double> t, soft, fractional, ttl;
  std::string to_csv() const;  // header "t,soft,fractional,ttl"
};
SingleRunResult run_singlerun(const ExperimentConfig& cfg);

// Aggregate utility of the three classes across Weibull shapes.
struct ShapeSweepResult {
  std::vector<double> a, soft, fractional, ttl;
  std::string to_csv() const;  // header "a,soft,fractional,ttl"
};
std::vector<double> default_shape_grid();  // 0.05, 0.10, ..., 1.00
ShapeSweepResult run_shape_sweep(const ExperimentConfig& cfg,
                                 const std::vector<double>& a_grid);

// Per-file utilities W_1 and W_3 of the three classes across the fairness
// ladder alpha in {0, 0.5, 2, max-min}, on the three-file instance with
// rates (1, 2, 3) and the config's shape/size/utility/capacity.
struct FairnessTable {
  struct Cell {
    double W1 = 0.0, W3 = 0.0;
  };
  struct Row {
    std::string label;  // "0", "0.5", "2", "maxmin"
    Cell ttl, fractional, soft;
  };
  std::vector<Row> rows;
  std::string to_csv() const;   // 4 decimal places
  std::string to_text() const;  // aligned console table
};
FairnessTable run_fairness_table(const ExperimentConfig& cfg);

// Monte-Carlo validation of the solved policies of one class; returns the
// full JSON report (per-file analytic vs empirical with z-scores).
nlohmann::json run_validate(const ExperimentConfig& cfg,
                            PolicyMode mode = PolicyMode::kSoft);

}  // namespace softttl
