// JSON (de)serialization of L-function data and run configurations.
//
// L-function schema:
//   { "m": 1, "epsilon": [1, 0], "Q": 0.5641895835477563,
//     "factors": [ { "lambda": 0.5, "mu": [0, 0] } ],
//     "coefficients": { "builtin": "zeta", "n_max": 1000 } }
// "coefficients" may instead be { "list": [1, -0.5, [0.1, 0.2], ...] } where
// each entry is a real number or a [re, im] pair.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lfun/selberg.hpp"
#include "json.hpp"

namespace lfun {

nlohmann::json to_json(const SelbergData& data);
/// Throws ConfigError naming the offending field.
SelbergData selberg_from_json(const nlohmann::json& j);

nlohmann::json to_json(const DerivedConstants& c);

struct RunConfig {
  std::string command;
  SelbergData lfunction;
  std::vector<long> ns;
  std::optional<double> zmin, zmax;
  int grid = 65;
  std::string kernel = "auto";
  double tol = 1e-12;
  // ftcheck
  std::vector<double> lambdas;
  std::vector<double> alphas;
  std::vector<double> Ts;
  int poly_power = 0;
  // kernel dump
  double xmin = 0, xmax = 6;

  /// Throws ConfigError on out-of-range values.
  void check() const;
};

nlohmann::json to_json(const RunConfig& cfg);
RunConfig run_config_from_json(const nlohmann::json& j);

/// Reads a file holding either a full RunConfig (has "lfunction") or bare
/// L-function data; in the latter case only `lfunction` is filled.
struct LoadedConfig {
  RunConfig config;
  bool full = false;
};
LoadedConfig load_config_file(const std::string& path);

}  // namespace lfun
