#include <algorithm>
#include <cmath>
#include <limits>

#include "catron/analytic.hpp"
#include "catron/error.hpp"

namespace catron {

namespace {

// log cosh(w), stable for large |Re w|.
cplx log_cosh(cplx w) {
  if (w.real() < 0.0) w = -w;
  return w - std::log(2.0) + std::log(1.0 + std::exp(-2.0 * w));
}

ModelParams mirrored(const ModelParams& p) {
  ModelParams q = p;
  q.Delta = -p.Delta;
  q.delta = -p.delta;
  return q;
}

// Mass beyond the grid edges under a Gaussian envelope e^{-x^2} (resp. e^{-p^2}):
// the tail past an edge at distance L carries about W_edge / (2 L) per unit length.
double tail_mass_estimate(const PhaseGrid& grid, const std::vector<double>& values) {
  double tail = 0.0;
  const auto edge_len = [](double L) { return 1.0 / (2.0 * std::max(std::abs(L), 1.0)); };
  for (std::size_t j = 0; j < grid.np(); ++j) {
    tail += std::abs(values[grid.index(0, j)]) * grid.hp() * edge_len(grid.x_min());
    tail += std::abs(values[grid.index(grid.nx() - 1, j)]) * grid.hp() * edge_len(grid.x_max());
  }
  for (std::size_t i = 0; i < grid.nx(); ++i) {
    tail += std::abs(values[grid.index(i, 0)]) * grid.hx() * edge_len(grid.p_min());
    tail += std::abs(values[grid.index(i, grid.np() - 1)]) * grid.hx() * edge_len(grid.p_max());
  }
  return 0.5 * tail;  // d^2 alpha = dx dp / 2
}

}  // namespace

LogComplex psi1_exact(cplx alpha, const ModelParams& p) {
  if (p.Delta < 0.0) {
    // Psi_1(alpha; Delta) = conj(Psi_1(conj(alpha); -Delta))
    const LogComplex m = psi1_exact(std::conj(alpha), mirrored(p));
    return {std::conj(m.log)};
  }
  const double sg = std::sqrt(p.G / p.eta);
  if (p.Delta == 0.0) return {log_cosh(2.0 * sg * alpha)};
  const KummerParams kp{cplx{0.0, p.delta}, cplx{0.0, 2.0 * p.delta}};
  const LogComplex m = kummer_log(kp, -4.0 * sg * alpha);
  return {2.0 * sg * alpha + m.log};
}

double neg_log_w0_raw(cplx alpha, const ModelParams& p) {
  return 2.0 * std::norm(alpha) - 2.0 * psi1_exact(alpha, p).log.real();
}

LogWignerGrid neg_log_wigner_exact(const PhaseGrid& grid, const ModelParams& p, Exec exec) {
  LogWignerGrid out;
  out.grid = grid;
  fill_grid(grid, out.neg_log_w, [&](std::size_t i, std::size_t j) { return neg_log_w0_raw(grid.alpha(i, j), p); },
            exec);
  out.valid.assign(grid.size(), 1);
  const auto ln_integral = [](const PhaseGrid& g, const std::vector<double>& nlw, double* tail_ratio) {
    const double m = *std::min_element(nlw.begin(), nlw.end());
    std::vector<double> w(g.size());
    for (std::size_t k = 0; k < w.size(); ++k) w[k] = std::exp(-(nlw[k] - m));
    const double integral = integrate_alpha(g, w);
    *tail_ratio = tail_mass_estimate(g, w) / integral;
    return std::log(integral) - m;
  };
  double tail = 0.0;
  out.ln_norm = ln_integral(grid, out.neg_log_w, &tail);
  // The steady state stretches along the real axis well beyond |alpha0|, so a
  // plotting window may cut off mass.  The constant is then taken from a
  // square grid at h = 0.05 grown until the tail is negligible.
  for (double L = 8.0; tail > 1e-6; L += 2.0) {
    if (L > 16.0) throw Error(ErrorCode::MassDeficient, "exact Wigner function is not contained in |x|, |p| <= 16");
    const auto n = static_cast<std::size_t>(std::llround(2.0 * L / 0.05)) + 1;
    const PhaseGrid big = make_grid({-L, L, -L, L}, n, n);
    std::vector<double> nlw;
    fill_grid(big, nlw, [&](std::size_t i, std::size_t j) { return neg_log_w0_raw(big.alpha(i, j), p); }, exec);
    out.ln_norm = ln_integral(big, nlw, &tail);
  }
  for (double& v : out.neg_log_w) v += out.ln_norm;
  return out;
}

WignerGrid to_wigner(const LogWignerGrid& lg) {
  WignerGrid w;
  w.grid = lg.grid;
  w.values.resize(lg.neg_log_w.size());
  for (std::size_t k = 0; k < w.values.size(); ++k) {
    w.values[k] = lg.valid[k] ? std::exp(-lg.neg_log_w[k]) : std::numeric_limits<double>::quiet_NaN();
  }
  w.quadrature_weight = 1.0;
  w.normalized = true;
  return w;
}

WignerGrid wigner_exact(const PhaseGrid& grid, const ModelParams& p, Exec exec) {
  const LogWignerGrid lg = neg_log_wigner_exact(grid, p, exec);
  WignerGrid w = to_wigner(lg);
  w.quadrature_weight = std::exp(lg.ln_norm);  // integral of the samples with unit normalization constant
  return w;
}

WignerGrid normalize_wigner(WignerGrid w) {
  const double integral = integrate_alpha(w.grid, w.values);
  if (!(std::abs(integral) > 0.0) || !std::isfinite(integral)) {
    throw Error(ErrorCode::MassDeficient, "Wigner samples integrate to zero or non-finite");
  }
  if (tail_mass_estimate(w.grid, w.values) > 1e-6 * std::abs(integral)) {
    throw Error(ErrorCode::MassDeficient, "more than 1e-6 of the mass lies outside the grid");
  }
  for (double& v : w.values) v /= integral;
  w.quadrature_weight = integral;
  w.normalized = true;
  return w;
}

}  // namespace catron
