#include "softttl/serialization.hpp"

#include <stdexcept>
#include <string>

namespace softttl {

namespace {

void check_keys(const nlohmann::json& j, std::initializer_list<const char*> allowed,
                const char* what) {
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

}  // namespace

InterArrivalDistribution distribution_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind")) {
    throw std::invalid_argument("distribution: need an object with \"kind\"");
  }
  const std::string kind = j.at("kind");
  if (kind == "weibull") {
    check_keys(j, {"kind", "shape", "rate", "scale"}, "weibull distribution");
    const double shape = j.at("shape");
    if (j.contains("scale")) {
      if (j.contains("rate")) {
        throw std::invalid_argument(
            "weibull distribution: give either rate or scale, not both");
      }
      return InterArrivalDistribution::weibull(shape, j.at("scale"));
    }
    return InterArrivalDistribution::weibull_from_rate(shape, j.at("rate"));
  }
  if (kind == "exponential") {
    check_keys(j, {"kind", "rate"}, "exponential distribution");
    return InterArrivalDistribution::exponential(j.at("rate"));
  }
  if (kind == "cdf_table") {
    check_keys(j, {"kind", "t", "F"}, "cdf_table distribution");
    return InterArrivalDistribution::cdf_table(
        j.at("t").get<std::vector<double>>(),
        j.at("F").get<std::vector<double>>());
  }
  throw std::invalid_argument("distribution: unknown kind \"" + kind + "\"");
}

nlohmann::json to_json(const InterArrivalDistribution& d) {
  if (d.kind() == InterArrivalDistribution::Kind::kWeibull) {
    return {{"kind", "weibull"}, {"shape", d.shape()}, {"rate", d.rate()}};
  }
  return {{"kind", "cdf_table"}, {"t", d.table_t()}, {"F", d.table_F()}};
}

UtilityFunction utility_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind")) {
    throw std::invalid_argument("utility: need an object with \"kind\"");
  }
  const std::string kind = j.at("kind");
  if (kind == "power") {
    check_keys(j, {"kind", "exponent"}, "power utility");
    return UtilityFunction::power(j.at("exponent"));
  }
  throw std::invalid_argument(
      "utility: unknown kind \"" + kind + "\" (configs support \"power\")");
}

nlohmann::json to_json(const UtilityFunction& u) {
  if (u.is_power()) {
    return {{"kind", "power"}, {"exponent", u.exponent()}};
  }
  return {{"kind", "custom"}, {"name", u.name()}};
}

Policy policy_from_json(const nlohmann::json& j) {
  check_keys(j, {"T", "K", "mu"}, "policy");
  auto mu = j.at("mu").get<std::vector<double>>();
  const int K = j.at("K");
  if (static_cast<int>(mu.size()) != K + 1) {
    throw std::invalid_argument("policy: mu must have K+1 entries");
  }
  return Policy(std::move(mu), j.at("T"));
}

nlohmann::json to_json(const Policy& p) {
  return {{"T", p.T()}, {"K", p.K()}, {"mu", p.fractions()}};
}

nlohmann::json to_json(const SolveResult& r) {
  nlohmann::json per_file = nlohmann::json::array();
  for (const auto& f : r.per_file) {
    per_file.push_back({{"W", f.W}, {"C", f.C}});
  }
  nlohmann::json policies = nlohmann::json::array();
  for (const auto& p : r.policies) policies.push_back(to_json(p));
  return {
      {"policies", policies},
      {"gamma", r.gamma},  // NaN serializes as null in max-min mode
      {"per_file", per_file},
      {"aggregate", r.aggregate},
      {"diagnostics",
       {{"outer_iterations", r.diag.outer_iterations},
        {"capacity_residual", r.diag.capacity_residual},
        {"kkt_residual", r.diag.kkt_residual},
        {"duality_gap", r.diag.duality_gap},
        {"inner_fallbacks", r.diag.inner_fallbacks},
        {"nodes_explored", r.diag.nodes_explored},
        {"method", r.diag.method}}},
  };
}

nlohmann::json to_json(const ValidationReport& r) {
  const auto stats = [](const ReplicationStats& s) {
    return nlohmann::json{
        {"mean", s.mean}, {"std_err", s.std_err}, {"n", s.n}};
  };
  return {
      {"analytic", {{"W", r.analytic.W}, {"C", r.analytic.C}}},
      {"utility", stats(r.utility)},
      {"occupancy", stats(r.occupancy)},
      {"z_utility", r.z_utility},
      {"z_occupancy", r.z_occupancy},
      {"total_arrivals", r.total_arrivals},
      {"t_end", r.t_end},
      {"replications", r.replications},
  };
}

}  // namespace softttl
