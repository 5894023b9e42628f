#include <cmath>

#include "catron/analytic.hpp"
#include "catron/error.hpp"

namespace catron {

double effective_potential_unchecked(cplx alpha, const ModelParams& p) noexcept {
  if (p.Delta < 0.0) {
    ModelParams q = p;
    q.Delta = -p.Delta;
    q.delta = -p.delta;
    return effective_potential_unchecked(std::conj(alpha), q);
  }
  const cplx s = sqrt_discriminant(alpha, p);
  double im = s.imag();
  if (p.Delta != 0.0) im -= p.Delta * std::log((s + p.Delta) / p.eta).imag();
  return 2.0 * std::norm(alpha) + 2.0 / p.eta * im;
}

double effective_potential(cplx alpha, const ModelParams& p) {
  if (!p.bistable) {
    throw Error(ErrorCode::NotBistable, "effective potential requires G > |Delta|");
  }
  if (near_branch_cut(alpha, p)) {
    throw Error(ErrorCode::BranchCutProximity, "alpha lies on the branch cut of sqrt(Delta^2 - 4 eta G alpha^2)");
  }
  return effective_potential_unchecked(alpha, p);
}

LogWignerGrid neg_log_wigner_potential(const PhaseGrid& grid, const ModelParams& p, double ln_norm, Exec exec) {
  if (!p.bistable) throw Error(ErrorCode::NotBistable, "effective potential requires G > |Delta|");
  LogWignerGrid out;
  out.grid = grid;
  // W ~ |C_-|^2 e^{-Phi}: the dominant matched coefficient fixes the offset.
  out.ln_norm = ln_norm - 2.0 * matched_coefficients(p).log_c_minus.real();
  out.valid.assign(grid.size(), 1);
  fill_grid(
      grid, out.neg_log_w,
      [&](std::size_t i, std::size_t j) {
        const cplx a = grid.alpha(i, j);
        if (near_branch_cut(a, p)) out.valid[grid.index(i, j)] = 0;
        return effective_potential_unchecked(a, p) + out.ln_norm;
      },
      exec);
  return out;
}

std::vector<std::vector<Quadratures>> branch_cut_polylines(const PhaseGrid& grid, const ModelParams& p) {
  // The radicand is real and negative only for real alpha beyond the turning
  // points, i.e. on p = 0 with |x| > |Delta| / sqrt(2 eta G).
  std::vector<std::vector<Quadratures>> lines;
  if (p.G == 0.0 || grid.p_min() > 0.0 || grid.p_max() < 0.0) return lines;
  const double xc = std::abs(p.Delta) / std::sqrt(2.0 * p.eta * p.G);
  if (grid.x_max() > xc) lines.push_back({{std::max(xc, grid.x_min()), 0.0}, {grid.x_max(), 0.0}});
  if (grid.x_min() < -xc) lines.push_back({{std::min(-xc, grid.x_max()), 0.0}, {grid.x_min(), 0.0}});
  return lines;
}

}  // namespace catron
