#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hallmhd/diophantine.hpp"
#include "hallmhd/lattice.hpp"

namespace hallmhd {

/// Validated run configuration. All quantities are in the natural units of
/// [0, 2pi)^3.
struct RunConfig {
  int n_grid = 32;
  PadFactor pad_factor{3, 2};
  double gamma = 1.0;
  double r = 2.5;
  /// Explicit background field; when absent one is chosen by
  /// suggest_background with |n| = background_amplitude.
  std::optional<Vec3> n;
  double background_amplitude = 1.0;
  /// Diophantine search radius; 0 selects the lattice covering radius.
  int K = 0;
  /// Regularity index used for rescaling initial data and decay prediction.
  double N = 17.0;
  double epsilon = 1e-2;
  std::uint64_t seed = 1;
  double spectrum_slope = 8.0;
  double t_end = 1.0;
  double dt_max = 5e-2;
  double dt_min = 1e-6;
  double cfl_adv = 0.5;
  double cfl_hall = 0.5;
  int sample_every = 10;
  int checkpoint_every = 0;
  std::string output_dir = ".";
  std::vector<double> hs;
  bool decay_verdicts = false;
  double decay_margin = 0.15;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Ordered key -> raw value mapping read from key=value text.
using KeyValues = std::map<std::string, std::string>;

/// Splits key=value lines; '#' starts a comment. Throws ConfigError on
/// malformed lines, duplicate or unknown keys.
KeyValues parse_key_values(const std::string& text);

/// Builds and validates a RunConfig. Keys n_grid, epsilon and t_end are
/// required; every other key has a default.
RunConfig build_config(const KeyValues& kv);

/// parse_key_values + build_config. With `defaults`, keys in `text`
/// override those of the defaults text.
RunConfig parse_config(const std::string& text);
RunConfig parse_config(const std::string& text, const std::string& defaults);

/// Serializes every key so that parse_config(print_config(c)) == c.
std::string print_config(const RunConfig& cfg);

/// Names of all accepted keys.
const std::vector<std::string>& config_keys();

/// Sobolev orders recorded in the CSV: the configured list plus r + 4 and
/// (r + 4 + N)/2 when decay verdicts are enabled, sorted and unique.
std::vector<double> effective_hs(const RunConfig& cfg);

/// Orders beta at which decay verdicts are evaluated.
std::vector<double> decay_orders(const RunConfig& cfg);

}  // namespace hallmhd
