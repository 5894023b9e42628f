#include <cmath>
#include <limits>
#include <numbers>

#include "catron/analytic.hpp"
#include "catron/error.hpp"

namespace catron {

namespace {

constexpr cplx I{0.0, 1.0};

ModelParams mirrored(const ModelParams& p) {
  ModelParams q = p;
  q.Delta = -p.Delta;
  q.delta = -p.delta;
  return q;
}

bool plus_branch_at_origin(cplx s, const ModelParams& p) {
  return std::abs(s - p.Delta) <= 1e-12 * std::max(std::abs(p.Delta), 1.0);
}

}  // namespace

cplx sqrt_discriminant(cplx alpha, const ModelParams& p) noexcept {
  cplx w = p.Delta * p.Delta - 4.0 * p.eta * p.G * alpha * alpha;
  if (w.imag() == 0.0 && w.real() < 0.0) w = cplx{w.real(), -0.0};
  return std::sqrt(w);
}

bool near_branch_cut(cplx alpha, const ModelParams& p, double rel_tol) noexcept {
  const cplx w = p.Delta * p.Delta - 4.0 * p.eta * p.G * alpha * alpha;
  return w.real() < 0.0 && std::abs(w.imag()) <= rel_tol * std::abs(w);
}

bool near_turning_point(cplx alpha, const ModelParams& p) noexcept {
  const cplx w = p.Delta * p.Delta - 4.0 * p.eta * p.G * alpha * alpha;
  return std::abs(w) < kTurningRadius * p.Delta * p.Delta || std::abs(w) == 0.0;
}

BranchFunction branch_function(cplx alpha, const ModelParams& p, Branch branch) {
  if (near_turning_point(alpha, p)) {
    throw Error(ErrorCode::TurningPointProximity, "WKB evaluated inside the turning-point exclusion radius");
  }
  BranchFunction bf{branch, sqrt_discriminant(alpha, p), 0.0, 0.0};
  const cplx s = bf.sqrt_term;
  const double D = p.Delta;
  if (branch == Branch::Minus) {
    bf.phi0 = I * s;
    if (D != 0.0) bf.phi0 -= I * D * std::log((s + D) / p.eta);
    bf.amplitude = std::sqrt((D + s) / s);
  } else {
    if (plus_branch_at_origin(s, p)) {
      throw Error(ErrorCode::SingularAtOrigin, "plus WKB branch is singular at alpha = 0");
    }
    bf.phi0 = -I * s;
    if (D != 0.0) bf.phi0 -= I * D * std::log((s - D) / p.eta);
    bf.amplitude = I * std::sqrt((D - s) / s);
  }
  return bf;
}

LogComplex wkb_psi(cplx alpha, const ModelParams& p, Branch branch) {
  const BranchFunction bf = branch_function(alpha, p, branch);
  return {std::log(bf.amplitude) + bf.phi0 / p.eta};
}

MatchedPsi matched_coefficients(const ModelParams& p) {
  const double d = p.delta;
  cplx base;
  if (d == 0.0) {
    base = std::log(0.5);  // Gamma(2x)/Gamma(x) -> 1/2
  } else {
    base = -I * d * std::log(2.0) + ln_gamma(cplx{0.0, 2.0 * d}) - ln_gamma(cplx{0.0, d});
  }
  const double half = 0.5 * std::numbers::pi * d;
  return {base - half, base + half};
}

LogComplex wkb_psi_matched(cplx alpha, const ModelParams& p, const MatchedPsi& c) {
  if (p.Delta < 0.0) {
    const ModelParams q = mirrored(p);
    const LogComplex m = wkb_psi_matched(std::conj(alpha), q, matched_coefficients(q));
    return {std::conj(m.log)};
  }
  const LogComplex minus{c.log_c_minus + wkb_psi(alpha, p, Branch::Minus).log};
  if (plus_branch_at_origin(sqrt_discriminant(alpha, p), p)) return minus;
  const LogComplex plus{c.log_c_plus + wkb_psi(alpha, p, Branch::Plus).log};
  return log_add(minus, plus);
}

LogWignerGrid neg_log_wigner_wkb(const PhaseGrid& grid, const ModelParams& p, double ln_norm, Exec exec) {
  LogWignerGrid out;
  out.grid = grid;
  out.ln_norm = ln_norm;
  out.valid.assign(grid.size(), 1);
  const MatchedPsi c = matched_coefficients(p);
  fill_grid(
      grid, out.neg_log_w,
      [&](std::size_t i, std::size_t j) {
        const cplx a = grid.alpha(i, j);
        if (near_turning_point(a, p)) {
          out.valid[grid.index(i, j)] = 0;
          return std::numeric_limits<double>::quiet_NaN();
        }
        return 2.0 * std::norm(a) - 2.0 * wkb_psi_matched(a, p, c).log.real() + ln_norm;
      },
      exec);
  return out;
}

WignerGrid wigner_wkb(const PhaseGrid& grid, const ModelParams& p, double ln_norm, Exec exec) {
  return to_wigner(neg_log_wigner_wkb(grid, p, ln_norm, exec));
}

std::vector<Quadratures> switching_line(const PhaseGrid& grid, const ModelParams& p) {
  const bool flip = p.Delta < 0.0;
  const ModelParams q = flip ? mirrored(p) : p;
  const MatchedPsi c = matched_coefficients(q);
  // log|C_+ Psi_+| - log|C_- Psi_-|, NaN where either branch is unavailable.
  auto balance = [&](cplx a) {
    if (flip) a = std::conj(a);
    if (near_turning_point(a, q) || plus_branch_at_origin(sqrt_discriminant(a, q), q)) {
      return std::numeric_limits<double>::quiet_NaN();
    }
    return (c.log_c_plus + wkb_psi(a, q, Branch::Plus).log - c.log_c_minus - wkb_psi(a, q, Branch::Minus).log).real();
  };
  auto radicand = [&](cplx a) { return p.Delta * p.Delta - 4.0 * p.eta * p.G * a * a; };
  // A segment whose ends sit on opposite sides of the cut changes sheet, not balance.
  auto crosses_cut = [&](cplx a0, cplx a1) {
    const cplx w0 = radicand(a0), w1 = radicand(a1);
    if (near_branch_cut(a0, p) || near_branch_cut(a1, p)) return true;
    return w0.real() < 0.0 && w1.real() < 0.0 && (w0.imag() > 0.0) != (w1.imag() > 0.0);
  };

  std::vector<double> b(grid.size());
  for (std::size_t i = 0; i < grid.nx(); ++i)
    for (std::size_t j = 0; j < grid.np(); ++j) b[grid.index(i, j)] = balance(grid.alpha(i, j));

  std::vector<Quadratures> pts;
  auto edge = [&](std::size_t i0, std::size_t j0, std::size_t i1, std::size_t j1) {
    const double b0 = b[grid.index(i0, j0)];
    const double b1 = b[grid.index(i1, j1)];
    if (!std::isfinite(b0) || !std::isfinite(b1) || (b0 > 0.0) == (b1 > 0.0)) return;
    if (crosses_cut(grid.alpha(i0, j0), grid.alpha(i1, j1))) return;
    const double t = b0 / (b0 - b1);
    pts.push_back({grid.x(i0) + t * (grid.x(i1) - grid.x(i0)), grid.p(j0) + t * (grid.p(j1) - grid.p(j0))});
  };
  for (std::size_t i = 0; i < grid.nx(); ++i) {
    for (std::size_t j = 0; j < grid.np(); ++j) {
      if (j + 1 < grid.np()) edge(i, j, i, j + 1);
      if (i + 1 < grid.nx()) edge(i, j, i + 1, j);
    }
  }
  return pts;
}

}  // namespace catron
