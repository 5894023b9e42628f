#pragma once

#include <string>
#include <vector>

#include "catron/config.hpp"
#include "catron/model.hpp"

namespace catron {

/// git describe of the source tree at configure time.
const char* build_id() noexcept;

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// "# build = ...", "# command = ...", then one "# key = value" line per config
/// key, then any extra lines (each prefixed with "# ").
std::vector<std::string> metadata_header(const RunConfig& cfg, const std::string& command,
                                         const std::vector<std::string>& extra = {});

/// Numbers use %.17g so identical inputs produce identical bytes.  Throws Io.
void write_csv(const std::string& path, const std::vector<std::string>& header, const CsvTable& table);

/// Long-format grid dump with columns x, p, <value_name>.
CsvTable grid_table(const PhaseGrid& grid, const std::vector<double>& values, const std::string& value_name);

/// Writes a string verbatim (JSON reports, config echoes).  Throws Io.
void write_text(const std::string& path, const std::string& text);

/// Recovers the config from a CSV header written by write_csv.
RunConfig config_from_csv_header(const std::string& path);

/// Creates the directory (and parents) if missing.  Throws Io.
void ensure_directory(const std::string& dir);

}  // namespace catron
