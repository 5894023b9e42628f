#include "catron/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "catron/error.hpp"

namespace catron {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto r = std::from_chars(v.data(), v.data() + v.size(), out);
  if (r.ec != std::errc() || r.ptr != v.data() + v.size()) {
    throw Error(ErrorCode::InvalidConfig, key + ": not a number: '" + v + "'");
  }
  return out;
}

long long to_int(const std::string& key, const std::string& v) {
  long long out = 0;
  const auto r = std::from_chars(v.data(), v.data() + v.size(), out);
  if (r.ec != std::errc() || r.ptr != v.data() + v.size()) {
    throw Error(ErrorCode::InvalidConfig, key + ": not an integer: '" + v + "'");
  }
  return out;
}

std::size_t to_count(const std::string& key, const std::string& v) {
  const long long n = to_int(key, v);
  if (n < 0) throw Error(ErrorCode::InvalidConfig, key + ": must be non-negative");
  return static_cast<std::size_t>(n);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "G",     "Delta", "eta",  "fock_cutoff", "x_min",          "x_max",          "p_min",
      "p_max", "nx",    "np",   "out",         "seed",           "rate_G",         "rate_points",
      "compare_fock_G", "compare_fock_cutoff", "portrait_n"};
  return keys;
}

void set_config_value(RunConfig& c, const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  if (key == "G") {
    c.params.G = to_double(key, v);
  } else if (key == "Delta") {
    c.params.Delta = to_double(key, v);
  } else if (key == "eta") {
    c.params.eta = to_double(key, v);
  } else if (key == "fock_cutoff") {
    c.params.fock_cutoff = static_cast<int>(to_int(key, v));
  } else if (key == "x_min") {
    c.bounds.x_min = to_double(key, v);
  } else if (key == "x_max") {
    c.bounds.x_max = to_double(key, v);
  } else if (key == "p_min") {
    c.bounds.p_min = to_double(key, v);
  } else if (key == "p_max") {
    c.bounds.p_max = to_double(key, v);
  } else if (key == "nx") {
    c.nx = to_count(key, v);
  } else if (key == "np") {
    c.np = to_count(key, v);
  } else if (key == "out") {
    if (v.empty()) throw Error(ErrorCode::InvalidConfig, "out: empty directory");
    c.out_dir = v;
  } else if (key == "seed") {
    c.seed = static_cast<std::uint64_t>(to_count(key, v));
  } else if (key == "rate_G") {
    std::vector<double> gs;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) gs.push_back(to_double(key, trim(item)));
    if (gs.empty()) throw Error(ErrorCode::InvalidConfig, "rate_G: empty list");
    c.rate_G = gs;
  } else if (key == "rate_points") {
    c.rate_points = to_count(key, v);
  } else if (key == "compare_fock_G") {
    c.compare_fock_G = to_double(key, v);
  } else if (key == "compare_fock_cutoff") {
    c.compare_fock_cutoff = static_cast<int>(to_int(key, v));
  } else if (key == "portrait_n") {
    c.portrait_n = to_count(key, v);
  } else {
    throw Error(ErrorCode::InvalidConfig, "unknown key '" + key + "'");
  }
}

std::string RunConfig::to_text() const {
  std::ostringstream o;
  o << "G = " << fmt(params.G) << "\n";
  o << "Delta = " << fmt(params.Delta) << "\n";
  o << "eta = " << fmt(params.eta) << "\n";
  o << "fock_cutoff = " << params.fock_cutoff << "\n";
  o << "x_min = " << fmt(bounds.x_min) << "\n";
  o << "x_max = " << fmt(bounds.x_max) << "\n";
  o << "p_min = " << fmt(bounds.p_min) << "\n";
  o << "p_max = " << fmt(bounds.p_max) << "\n";
  o << "nx = " << nx << "\n";
  o << "np = " << np << "\n";
  o << "out = " << out_dir << "\n";
  o << "seed = " << seed << "\n";
  o << "rate_G = ";
  for (std::size_t k = 0; k < rate_G.size(); ++k) o << (k ? "," : "") << fmt(rate_G[k]);
  o << "\n";
  o << "rate_points = " << rate_points << "\n";
  o << "compare_fock_G = " << fmt(compare_fock_G) << "\n";
  o << "compare_fock_cutoff = " << compare_fock_cutoff << "\n";
  o << "portrait_n = " << portrait_n << "\n";
  return o.str();
}

RunConfig parse_config_text(const std::string& text) {
  RunConfig c;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto h = line.find('#'); h != std::string::npos) line.resize(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::InvalidConfig, "line " + std::to_string(lineno) + ": expected key = value");
    }
    set_config_value(c, trim(line.substr(0, eq)), line.substr(eq + 1));
  }
  c.params = validate_params(c.params);
  make_grid(c.bounds, c.nx, c.np);
  return c;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::Io, "cannot read config '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config_text(ss.str());
}

void apply_env_overrides(RunConfig& c) {
  for (const auto& key : config_keys()) {
    std::string name = "CATRON_" + key;
    std::transform(name.begin(), name.end(), name.begin(), [](unsigned char ch) { return std::toupper(ch); });
    if (const char* v = std::getenv(name.c_str())) set_config_value(c, key, v);
  }
  c.params = validate_params(c.params);
  make_grid(c.bounds, c.nx, c.np);
}

void apply_grid_spec(RunConfig& c, const std::string& spec) {
  std::string counts = spec;
  if (const auto at = spec.find('@'); at != std::string::npos) {
    counts = spec.substr(0, at);
    std::stringstream ss(spec.substr(at + 1));
    std::string item;
    std::vector<double> b;
    while (std::getline(ss, item, ':')) b.push_back(to_double("grid", trim(item)));
    if (b.size() != 4) throw Error(ErrorCode::InvalidConfig, "grid: bounds need xmin:xmax:pmin:pmax");
    c.bounds = {b[0], b[1], b[2], b[3]};
  }
  if (const auto x = counts.find('x'); x != std::string::npos) {
    c.nx = to_count("grid", trim(counts.substr(0, x)));
    c.np = to_count("grid", trim(counts.substr(x + 1)));
  } else {
    c.nx = c.np = to_count("grid", trim(counts));
  }
  make_grid(c.bounds, c.nx, c.np);
}

}  // namespace catron
