#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

#include "offsim/attacks.hpp"
#include "offsim/estimate.hpp"

namespace offsim::cli {

// Bad flags or flag combinations; exit code 2.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct AttackConfig {
  AttackParams params;
  int trials = 1;
  std::uint64_t seed = 1;
  int jobs = 1;
  bool timing = false;
};

nlohmann::json run_attacks(const AttackConfig& cfg);
std::string attacks_csv(const nlohmann::json& doc);

struct EstimateConfig {
  std::optional<std::string> preset;
  std::optional<int> n;
  std::optional<int> m;
  std::optional<int> u;
  std::optional<std::string> convention;
  std::optional<std::string> table;  // "1", "em", "fx"
};

// Text for presets and custom parameters, CSV for tables.
std::string run_estimate(const EstimateConfig& cfg, bool json);

struct BoundsConfig {
  std::string suite = "all";  // all, pbad, prop1, qaa
  int n = 0;                  // 0: per-suite default
  int c = 0;
  std::uint64_t trials = 0;
  int functions = 0;
  std::uint64_t seed = 1;
};

nlohmann::json run_verify_bounds(const BoundsConfig& cfg);

struct GenConfig {
  std::string what;  // permutation, cipher, instance
  std::string kind = "em";
  int n = 8;
  int m = 3;
  int u = 3;
  std::uint64_t seed = 1;
};

std::string run_gen(const GenConfig& cfg);

}  // namespace offsim::cli
