#pragma once

#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "catron/model.hpp"

namespace testing {

using catron::cplx;

inline double rel_err(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

/// |exp(la - lb) - 1| for two logarithms; insensitive to the 2 pi i ambiguity.
inline double log_rel_err(cplx la, cplx lb) {
  const cplx d = la - lb;
  const double s = std::sin(0.5 * d.imag());
  return std::abs(cplx(std::expm1(d.real()) * std::cos(d.imag()) - 2.0 * s * s, std::exp(d.real()) * std::sin(d.imag())));
}

inline std::mt19937_64 rng(std::uint64_t salt) { return std::mt19937_64(20240601ULL * 7919ULL + salt); }

inline double uniform(std::mt19937_64& g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

inline cplx uniform_c(std::mt19937_64& g, double lo, double hi) { return {uniform(g, lo, hi), uniform(g, lo, hi)}; }

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Fresh directory under the system temp dir.
inline std::string scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("catron_unit_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir.string();
}

}  // namespace testing

#define CHECK_ERROR_CODE(expr, ecode)                                    \
  do {                                                                   \
    bool caught_ = false;                                                \
    try {                                                                \
      (void)(expr);                                                      \
    } catch (const catron::Error& e_) {                                  \
      caught_ = true;                                                    \
      CHECK_MESSAGE(e_.code() == (ecode), "unexpected code: " << e_.what()); \
    }                                                                    \
    CHECK_MESSAGE(caught_, "no catron::Error thrown by " #expr);        \
  } while (0)
