#pragma once

#include <json.hpp>

#include "softttl/distribution.hpp"
#include "softttl/instance.hpp"
#include "softttl/policy.hpp"
#include "softttl/simulator.hpp"
#include "softttl/solve_result.hpp"
#include "softttl/utility.hpp"

namespace softttl {

// Configuration-file forms:
//   {"kind": "weibull", "shape": 0.7, "rate": 1.0}
//   {"kind": "weibull", "shape": 0.7, "scale": 0.8}
//   {"kind": "exponential", "rate": 2.0}
//   {"kind": "cdf_table", "t": [...], "F": [...]}
InterArrivalDistribution distribution_from_json(const nlohmann::json& j);
nlohmann::json to_json(const InterArrivalDistribution& d);

// {"kind": "power", "exponent": 0.5}; custom utilities are code-only.
UtilityFunction utility_from_json(const nlohmann::json& j);
nlohmann::json to_json(const UtilityFunction& u);

// {"T": ..., "K": ..., "mu": [...]}
Policy policy_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Policy& p);

nlohmann::json to_json(const SolveResult& r);
nlohmann::json to_json(const ValidationReport& r);

}  // namespace softttl
