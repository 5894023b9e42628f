#pragma once

#include <string>
#include <vector>

#include "catron/config.hpp"

namespace catron {

enum class WignerSource { Exact, Wkb, Potential, Fock };

/// Throws InvalidConfig for an unknown name.
WignerSource parse_wigner_source(const std::string& name);
std::string to_string(WignerSource s);

// Every command writes into cfg.out_dir (created if needed), echoes the config
// to run_config.txt and returns the paths it wrote.

/// wigner_<source>.csv (x, p, W) and neg_log_wigner_<source>.csv; the potential
/// source also writes branch_cuts.json, the wkb source switching_line.csv.
std::vector<std::string> cmd_wigner(const RunConfig& cfg, WignerSource source);

/// flow_field.csv, fixed_points.csv, instanton_uphill.csv, downhill.csv and
/// phase_portrait.json.  Throws NotBistable.
std::vector<std::string> cmd_phase_portrait(const RunConfig& cfg);

/// rates.csv for every G in cfg.rate_G; rate_critical.csv with critical_zoom;
/// rate_compare_fock.csv (block decay rates at G = compare_fock_G) with compare_fock.
std::vector<std::string> cmd_rate(const RunConfig& cfg, bool compare_fock, bool critical_zoom);

/// instanton.csv (t, Re alpha, Im alpha, Re chi, Im chi, |L|, action).
std::vector<std::string> cmd_instanton(const RunConfig& cfg);

/// spectrum.csv (block, Re lambda, Im lambda) and spectrum.json.
std::vector<std::string> cmd_spectrum(const RunConfig& cfg);

struct ValidateReport {
  std::string json;
  bool all_pass = false;
};

/// Runs the acceptance criteria (all when `only` is empty) and writes
/// validate_report.json.  With inject_fault the 1F1 evaluator is corrupted for
/// the duration of the run.
ValidateReport cmd_validate(const RunConfig& cfg, bool inject_fault, const std::vector<std::string>& only = {});

}  // namespace catron
