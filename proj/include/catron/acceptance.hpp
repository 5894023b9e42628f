#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace catron {

struct CriterionResult {
  std::string id;     ///< "A1" .. "A8"
  std::string title;
  bool pass = false;
  std::vector<std::pair<std::string, double>> metrics;
  std::string detail;  ///< failure reason or short summary
  double seconds = 0.0;
};

struct AcceptanceContext {
  std::uint64_t seed = 20240601;
  std::string scratch_dir = "acceptance_scratch";  ///< A7 writes CLI outputs here
};

const std::vector<std::string>& criterion_ids();

/// Runs one criterion; library errors are caught and reported as failures.
CriterionResult run_criterion(const std::string& id, const AcceptanceContext& ctx);

/// "PASS A3 <title> (metric=value, ...)" or "FAIL ...".
std::string format_result_line(const CriterionResult& r);

}  // namespace catron
