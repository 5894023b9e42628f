#include <cmath>
#include <limits>
#include <string>

#include "catron/error.hpp"
#include "catron/instanton.hpp"

namespace catron {

namespace {

// arctan(x) - x, with a series for small x where the difference cancels.
double atan_minus_x(double x) {
  if (std::abs(x) >= 0.1) return std::atan(x) - x;
  const double x2 = x * x;
  double term = -x * x2 / 3.0;
  double sum = 0.0;
  double pw = x * x2;
  for (int k = 1; k < 30; ++k) {
    term = (k % 2 == 1 ? -1.0 : 1.0) * pw / (2.0 * k + 1.0);
    sum += term;
    pw *= x2;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

}  // namespace

RateResult ln_rate_closed_form(const ModelParams& p) {
  if (!p.bistable) throw Error(ErrorCode::NotBistable, "switching rate needs G > |Delta|");
  const double D = std::abs(p.Delta);
  const double R = std::sqrt((p.G - D) * (p.G + D));
  RateResult r;
  r.params = p;
  r.bistable = true;
  if (D == 0.0) {
    r.ln_rate = -2.0 * p.G / p.eta;
  } else {
    const double x = R / D;
    // For large x use the arctan form directly; otherwise Delta (atan x - x).
    r.ln_rate = x < 10.0 ? 2.0 * D / p.eta * atan_minus_x(x) : (-2.0 * R + 2.0 * D * std::atan(x)) / p.eta;
  }
  const cplx a0 = fixed_points(p).alpha0;
  r.potential_difference = effective_potential_unchecked(a0, p) - effective_potential_unchecked(0.0, p);
  r.consistent = std::abs(r.ln_rate - r.potential_difference) <= 1e-10 * (1.0 + std::abs(r.ln_rate));
  return r;
}

double ln_rate_critical(const ModelParams& p) {
  const double D = std::abs(p.Delta);
  const double rel = (p.G - D) / p.G;
  if (!(rel >= 0.0 && rel <= 0.05)) {
    throw Error(ErrorCode::OutsideAsymptoticWindow,
                "(G - |Delta|)/G = " + std::to_string(rel) + " is outside [0, 0.05]");
  }
  return -4.0 * std::sqrt(2.0) * std::pow(p.G - D, 1.5) / (3.0 * p.eta * std::sqrt(p.G));
}

std::vector<RateRow> rate_sweep(const std::vector<double>& G_list, std::size_t n_delta, double eta) {
  const std::size_t total = G_list.size() * n_delta;
  std::vector<RateRow> rows(total);
#pragma omp parallel for schedule(dynamic)
  for (std::size_t idx = 0; idx < total; ++idx) {
    const double G = G_list[idx / n_delta];
    const double D = G * static_cast<double>(idx % n_delta) / static_cast<double>(n_delta);
    const ModelParams p = make_params(G, D, eta);
    RateRow row{G, D, eta, ln_rate_closed_form(p).ln_rate, std::numeric_limits<double>::quiet_NaN()};
    if ((G - D) / G <= 0.05) row.ln_rate_critical = ln_rate_critical(p);
    rows[idx] = row;
  }
  return rows;
}

}  // namespace catron
