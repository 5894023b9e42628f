#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "catron/error.hpp"
#include "catron/io.hpp"

#ifndef CATRON_BUILD_ID
#define CATRON_BUILD_ID "unknown"
#endif

namespace catron {

const char* build_id() noexcept { return CATRON_BUILD_ID; }

std::vector<std::string> metadata_header(const RunConfig& cfg, const std::string& command,
                                         const std::vector<std::string>& extra) {
  std::vector<std::string> h;
  h.push_back(std::string("build = ") + build_id());
  h.push_back("command = " + command);
  std::istringstream in(cfg.to_text());
  std::string line;
  while (std::getline(in, line)) h.push_back(line);
  for (const auto& e : extra) h.push_back(e);
  return h;
}

void write_csv(const std::string& path, const std::vector<std::string>& header, const CsvTable& table) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::Io, "cannot write '" + path + "'");
  for (const auto& h : header) f << "# " << h << "\n";
  for (std::size_t c = 0; c < table.columns.size(); ++c) f << (c ? "," : "") << table.columns[c];
  f << "\n";
  char buf[40];
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (std::isnan(row[c])) {
        std::snprintf(buf, sizeof buf, "nan");
      } else {
        std::snprintf(buf, sizeof buf, "%.17g", row[c]);
      }
      f << (c ? "," : "") << buf;
    }
    f << "\n";
  }
  if (!f) throw Error(ErrorCode::Io, "write failed for '" + path + "'");
}

CsvTable grid_table(const PhaseGrid& grid, const std::vector<double>& values, const std::string& value_name) {
  CsvTable t;
  t.columns = {"x", "p", value_name};
  t.rows.reserve(grid.size());
  for (std::size_t i = 0; i < grid.nx(); ++i) {
    for (std::size_t j = 0; j < grid.np(); ++j) t.rows.push_back({grid.x(i), grid.p(j), values[grid.index(i, j)]});
  }
  return t;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::Io, "cannot write '" + path + "'");
  f << text;
  if (!f) throw Error(ErrorCode::Io, "write failed for '" + path + "'");
}

RunConfig config_from_csv_header(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::Io, "cannot read '" + path + "'");
  std::string line;
  std::string text;
  while (std::getline(f, line) && line.rfind("# ", 0) == 0) {
    const std::string body = line.substr(2);
    const auto eq = body.find(" = ");
    if (eq == std::string::npos) continue;
    const std::string key = body.substr(0, eq);
    for (const auto& k : config_keys()) {
      if (k == key) {
        text += body + "\n";
        break;
      }
    }
  }
  return parse_config_text(text);
}

void ensure_directory(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create directory '" + dir + "': " + ec.message());
}

}  // namespace catron
