#include "softttl/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <stdexcept>

#include "softttl/errors.hpp"
#include "softttl/rng.hpp"
#include "softttl/serialization.hpp"
#include "softttl/simulator.hpp"
#include "softttl/solver_constrained.hpp"
#include "softttl/solver_soft.hpp"

namespace softttl {

namespace {

void check_keys(const nlohmann::json& j,
                std::initializer_list<const char*> allowed, const char* what) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) {
      if (key == a) {
        ok = true;
        break;
      }
    }
    if (!ok) {
      throw std::invalid_argument(std::string(what) + ": unknown key \"" +
                                  key + "\"");
    }
  }
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt4(double v) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
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

ExperimentConfig ExperimentConfig::defaults() {
  ExperimentConfig cfg;
  cfg.instance.files.clear();
  for (int i = 0; i < 3; ++i) {
    FileSpec f;
    f.size = 1.0;
    f.dist = InterArrivalDistribution::weibull_from_rate(0.7, 1.0);
    f.utility = UtilityFunction::power(0.5);
    cfg.instance.files.push_back(std::move(f));
  }
  cfg.instance.capacity = 1.5;
  cfg.instance.fairness = Fairness::alpha_fair(0.0);
  cfg.instance.T = 0.03;
  cfg.instance.K = 100;
  return cfg;
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  check_keys(j, {"files", "capacity", "alpha", "discretization", "simulation"},
             "config");
  ExperimentConfig cfg = defaults();

  if (j.contains("files")) {
    if (!j.at("files").is_array() || j.at("files").empty()) {
      throw std::invalid_argument("config: \"files\" must be a non-empty array");
    }
    cfg.instance.files.clear();
    for (const auto& fj : j.at("files")) {
      check_keys(fj, {"size", "distribution", "utility"}, "file");
      FileSpec f;
      if (fj.contains("size")) f.size = fj.at("size");
      if (fj.contains("distribution"))
        f.dist = distribution_from_json(fj.at("distribution"));
      if (fj.contains("utility")) f.utility = utility_from_json(fj.at("utility"));
      cfg.instance.files.push_back(std::move(f));
    }
  }
  if (j.contains("capacity")) cfg.instance.capacity = j.at("capacity");
  if (j.contains("alpha")) {
    const auto& a = j.at("alpha");
    if (a.is_string() && a.get<std::string>() == "maxmin") {
      cfg.instance.fairness = Fairness::max_min();
    } else if (a.is_number()) {
      cfg.instance.fairness = Fairness::alpha_fair(a.get<double>());
    } else {
      throw std::invalid_argument(
          "config: \"alpha\" must be a number or \"maxmin\"");
    }
  }
  if (j.contains("discretization")) {
    const auto& d = j.at("discretization");
    check_keys(d, {"T", "K"}, "discretization");
    if (d.contains("T")) cfg.instance.T = d.at("T");
    if (d.contains("K")) cfg.instance.K = d.at("K");
  }
  if (j.contains("simulation")) {
    const auto& s = j.at("simulation");
    check_keys(s, {"t_end", "replications", "seed"}, "simulation");
    if (s.contains("t_end")) cfg.sim.t_end = s.at("t_end");
    if (s.contains("replications")) cfg.sim.replications = s.at("replications");
    if (s.contains("seed")) cfg.sim.seed = s.at("seed");
  }
  cfg.instance.validate();
  return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  nlohmann::json j;
  in >> j;
  return from_json(j);
}

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json files = nlohmann::json::array();
  for (const auto& f : instance.files) {
    files.push_back({{"size", f.size},
                     {"distribution", softttl::to_json(f.dist)},
                     {"utility", softttl::to_json(f.utility)}});
  }
  nlohmann::json alpha;
  if (instance.fairness.maxmin) {
    alpha = "maxmin";
  } else {
    alpha = instance.fairness.alpha;
  }
  return {{"files", files},
          {"capacity", instance.capacity},
          {"alpha", alpha},
          {"discretization", {{"T", instance.T}, {"K", instance.K}}},
          {"simulation",
           {{"t_end", sim.t_end},
            {"replications", sim.replications},
            {"seed", sim.seed}}}};
}

void ExperimentConfig::set_shape(double shape) {
  for (auto& f : instance.files) {
    f.dist = InterArrivalDistribution::weibull_from_rate(shape, f.rate());
  }
}

std::string SingleRunResult::to_csv() const {
  std::string out = "t,soft,fractional,ttl\n";
  for (std::size_t i = 0; i < t.size(); ++i) {
    out += fmt(t[i]) + "," + fmt(soft[i]) + "," + fmt(fractional[i]) + "," +
           fmt(ttl[i]) + "\n";
  }
  return out;
}

SingleRunResult run_singlerun(const ExperimentConfig& cfg) {
  const auto& inst = cfg.instance;
  SingleRunResult out;
  const SolveResult soft = solve_soft(inst);
  const SolveResult frac = solve_fractional(inst);
  const SolveResult ttl = solve_ttl(inst);
  for (int k = 0; k <= inst.K; ++k) {
    out.t.push_back(k * inst.T);
    out.soft.push_back(soft.policies[0].fractions()[k]);
    out.fractional.push_back(frac.policies[0].fractions()[k]);
    out.ttl.push_back(ttl.policies[0].fractions()[k]);
  }
  return out;
}

std::vector<double> default_shape_grid() {
  std::vector<double> g;
  for (int i = 1; i <= 20; ++i) g.push_back(0.05 * i);
  return g;
}

std::string ShapeSweepResult::to_csv() const {
  std::string out = "a,soft,fractional,ttl\n";
  for (std::size_t i = 0; i < a.size(); ++i) {
    out += fmt(a[i]) + "," + fmt(soft[i]) + "," + fmt(fractional[i]) + "," +
           fmt(ttl[i]) + "\n";
  }
  return out;
}

ShapeSweepResult run_shape_sweep(const ExperimentConfig& cfg,
                                 const std::vector<double>& a_grid) {
  const int n = static_cast<int>(a_grid.size());
  ShapeSweepResult out;
  out.a = a_grid;
  out.soft.resize(n);
  out.fractional.resize(n);
  out.ttl.resize(n);
  std::exception_ptr error;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (n > 1)
#endif
  for (int i = 0; i < n; ++i) {
    try {
      ExperimentConfig point = cfg;
      point.set_shape(a_grid[i]);
      out.soft[i] = solve_soft(point.instance).aggregate;
      out.fractional[i] = solve_fractional(point.instance).aggregate;
      out.ttl[i] = solve_ttl(point.instance).aggregate;
    } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
}

std::string FairnessTable::to_csv() const {
  std::string out =
      "alpha,ttl_W1,ttl_W3,fractional_W1,fractional_W3,soft_W1,soft_W3\n";
  for (const auto& r : rows) {
    out += r.label + "," + fmt4(r.ttl.W1) + "," + fmt4(r.ttl.W3) + "," +
           fmt4(r.fractional.W1) + "," + fmt4(r.fractional.W3) + "," +
           fmt4(r.soft.W1) + "," + fmt4(r.soft.W3) + "\n";
  }
  return out;
}

std::string FairnessTable::to_text() const {
  std::string out = "  alpha |  ttl W1  ttl W3 | frac W1 frac W3 | soft W1 soft W3\n";
  char buf[160];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof(buf),
                  "%7s | %7.4f %7.4f | %7.4f %7.4f | %7.4f %7.4f\n",
                  r.label.c_str(), r.ttl.W1, r.ttl.W3, r.fractional.W1,
                  r.fractional.W3, r.soft.W1, r.soft.W3);
    out += buf;
  }
  return out;
}

FairnessTable run_fairness_table(const ExperimentConfig& cfg) {
  // The fairness ladder is reported on the unequal-rate instance with
  // rates (1, 2, 3); shape, sizes, utility, capacity and grid come from
  // the config's first file.
  Instance base = cfg.instance;
  const FileSpec proto = base.files.at(0);
  if (proto.dist.kind() != InterArrivalDistribution::Kind::kWeibull) {
    throw std::invalid_argument(
        "fairness table: needs a Weibull request law");
  }
  base.files.clear();
  for (double rate : {1.0, 2.0, 3.0}) {
    FileSpec f = proto;
    f.dist =
        InterArrivalDistribution::weibull_from_rate(proto.dist.shape(), rate);
    base.files.push_back(std::move(f));
  }

  FairnessTable table;
  const std::vector<std::pair<std::string, Fairness>> ladder = {
      {"0", Fairness::alpha_fair(0.0)},
      {"0.5", Fairness::alpha_fair(0.5)},
      {"2", Fairness::alpha_fair(2.0)},
      {"maxmin", Fairness::max_min()},
  };
  for (const auto& [label, fairness] : ladder) {
    Instance inst = base;
    inst.fairness = fairness;
    FairnessTable::Row row;
    row.label = label;
    const auto cell = [](const SolveResult& r) {
      return FairnessTable::Cell{r.per_file.front().W, r.per_file.back().W};
    };
    row.ttl = cell(solve_ttl(inst));
    row.fractional = cell(solve_fractional(inst));
    row.soft = cell(solve_soft(inst));
    table.rows.push_back(std::move(row));
  }
  return table;
}

nlohmann::json run_validate(const ExperimentConfig& cfg, PolicyMode mode) {
  const SolveResult solved = solve_mode(cfg.instance, mode);
  nlohmann::json files = nlohmann::json::array();
  for (std::size_t i = 0; i < cfg.instance.files.size(); ++i) {
    const ValidationReport rep = validate_lemma1(
        cfg.instance.files[i], solved.policies[i], cfg.sim.replications,
        cfg.sim.t_end, derive_seed(cfg.sim.seed, 1000 + i));
    files.push_back(to_json(rep));
  }
  return {{"policy_class", to_string(mode)},
          {"seed", cfg.sim.seed},
          {"t_end", cfg.sim.t_end},
          {"replications", cfg.sim.replications},
          {"files", files}};
}

}  // namespace softttl
