#pragma once

// Flat `key=value` run configuration. Lines starting with '#' and blank lines
// are ignored, lists are comma separated and coefficients are written as
// `kind(p1,p2,...)`, e.g. `sigma2=power(1,0.25)`.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "volest/harness.hpp"
#include "volest/models.hpp"

namespace volest {

struct RunConfig {
  ModelSpec spec;
  double T = 10.0;
  double h = 1e-3;
  Index n_paths = 100;
  std::uint64_t seed = 1;
  std::vector<double> horizons;  // empty: {T}

  std::vector<double> effective_horizons() const;
  ExperimentConfig experiment(unsigned threads = 0) const;
  bool operator==(const RunConfig&) const = default;
};

// Raw key/value store; rejects unknown keys.
class ConfigMap {
 public:
  static const std::vector<std::string>& keys();

  void set(std::string_view key, std::string_view value);
  // Parses `key=value` text; throws ConfigError with the line number.
  void merge_text(std::string_view text);
  // `key=value` override as given on the command line.
  void apply_override(std::string_view assignment);

  // Builds the configuration; throws ConfigError for invalid values.
  RunConfig resolve() const;

 private:
  std::map<std::string, std::string, std::less<>> values_;
};

RunConfig parse_config(std::string_view text);

// Every key with its canonical value, one `prefix key=value` line each, in
// the fixed order of ConfigMap::keys().
std::string echo_config(const RunConfig& config, std::string_view prefix = "# ");

std::vector<double> parse_list(std::string_view text, std::string_view key);

}  // namespace volest
