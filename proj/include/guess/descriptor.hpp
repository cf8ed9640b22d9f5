#pragma once

#include "guess/bob.hpp"
#include "guess/coverage.hpp"

#include <json.hpp>

#include <stdexcept>

namespace guess {

/// Malformed or unknown strategy descriptor.
struct DescriptorError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline constexpr int kDescriptorVersion = 1;

/// {"v":1, "role":"alice", "kind":..., "params":{...}, "flags":{...}}
nlohmann::json to_json(const CoverageFunction& f);
nlohmann::json to_json(const ThresholdDistribution& d);
nlohmann::json to_json(const DiscreteBobStrategy& bob);

CoverageFunction alice_from_json(const nlohmann::json& j);
ThresholdDistribution threshold_from_json(const nlohmann::json& j);
BobStrategy bob_from_json(const nlohmann::json& j);

/// Bob descriptor for built-ins; continuous strategies serialize their
/// constructor parameters.
nlohmann::json bob_descriptor(const std::string& kind, nlohmann::json params);

}  // namespace guess
