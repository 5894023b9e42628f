#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "catron/model.hpp"

namespace catron {

/// Everything a CLI run depends on.  to_text() and parse_config_text()
/// round-trip exactly, so the echo written next to every output reproduces it.
struct RunConfig {
  ModelParams params{};
  GridBounds bounds{};
  std::size_t nx = 241;
  std::size_t np = 241;
  std::string out_dir = "out";
  std::uint64_t seed = 20240601;

  // rate command
  std::vector<double> rate_G = {5.0, 6.0, 7.0};
  std::size_t rate_points = 64;
  double compare_fock_G = 4.0;
  int compare_fock_cutoff = 40;

  // phase-portrait command
  std::size_t portrait_n = 25;

  std::string to_text() const;
};

/// Parses "key = value" lines ('#' starts a comment).  Unknown keys and
/// malformed values throw InvalidConfig.  Parameters are validated at the end.
RunConfig parse_config_text(const std::string& text);

/// Reads a file (Io error when unreadable) and parses it.
RunConfig load_config_file(const std::string& path);

/// Applies CATRON_<KEY> overrides (key upper-cased, e.g. CATRON_DELTA) from
/// the process environment, then re-validates.
void apply_env_overrides(RunConfig& cfg);

/// Sets one key; the same keys as the file format.
void set_config_value(RunConfig& cfg, const std::string& key, const std::string& value);

/// Ordered list of recognised keys.
const std::vector<std::string>& config_keys();

/// Grid spec "N", "NXxNP", optionally followed by "@xmin:xmax:pmin:pmax".
void apply_grid_spec(RunConfig& cfg, const std::string& spec);

}  // namespace catron
