#include <cmath>
#include <numbers>

#include "catron/kernels.hpp"

namespace catron {

namespace {

// Sum over m, n of rho(m, n) W_{|m><n|}(alpha).  For m = n + k the matrix
// element is (2/pi)(-1)^n e^{-i k theta} f_n^k(x), x = 4|alpha|^2, where
// f_n^k = sqrt(n!/(n+k)!) x^{k/2} e^{-x/2} L_n^k(x) obeys a three-term
// recurrence that stays bounded.  W_{|n><m|} is the complex conjugate.
cplx wigner_point(const std::vector<cplx>& rho, std::size_t N, cplx alpha) {
  const double x = 4.0 * std::norm(alpha);
  const double theta = std::arg(alpha);
  cplx total = 0.0;
  for (std::size_t k = 0; k < N; ++k) {
    const double dk = static_cast<double>(k);
    double f_prev = 0.0;
    double f = (x == 0.0) ? (k == 0 ? 1.0 : 0.0)
                          : std::exp(0.5 * dk * std::log(x) - 0.5 * x - 0.5 * std::lgamma(dk + 1.0));
    cplx diag_sum = 0.0;   // sum rho(n+k, n) (-1)^n f_n
    cplx adj_sum = 0.0;    // sum rho(n, n+k) (-1)^n f_n
    for (std::size_t n = 0; n + k < N; ++n) {
      const double sgn = (n % 2 == 0) ? 1.0 : -1.0;
      diag_sum += sgn * f * rho[(n + k) + n * N];
      if (k > 0) adj_sum += sgn * f * rho[n + (n + k) * N];
      const double dn = static_cast<double>(n);
      const double f_next =
          ((2.0 * dn + 1.0 + dk - x) * f - std::sqrt(dn * (dn + dk)) * f_prev) / std::sqrt((dn + 1.0) * (dn + 1.0 + dk));
      f_prev = f;
      f = f_next;
    }
    const cplx phase = std::polar(1.0, -dk * theta);
    total += phase * diag_sum + std::conj(phase) * adj_sum;
  }
  return 2.0 / std::numbers::pi * total;
}

}  // namespace

std::vector<double> wigner_fock_kernel(const std::vector<cplx>& rho, std::size_t N, const PhaseGrid& grid, Exec exec) {
  std::vector<double> out;
  fill_grid(grid, out, [&](std::size_t i, std::size_t j) { return wigner_point(rho, N, grid.alpha(i, j)).real(); },
            exec);
  return out;
}

namespace {

enum class Dir { Alpha, AlphaBar };

// Wirtinger derivative by centered differences: d/dalpha = (d_x - i d_p)/sqrt2,
// d/dalphabar = (d_x + i d_p)/sqrt2.  Entries within one cell of the edge are
// left at zero; callers only read deeper interior points.
std::vector<cplx> wirtinger(const std::vector<cplx>& f, const PhaseGrid& g, Dir dir, Exec exec) {
  std::vector<cplx> out(f.size(), cplx{});
  const auto nx = static_cast<long>(g.nx());
  const std::size_t np = g.np();
  const double sx = 1.0 / (2.0 * g.hx() * std::numbers::sqrt2);
  const double sp = 1.0 / (2.0 * g.hp() * std::numbers::sqrt2);
  const cplx ip = dir == Dir::Alpha ? cplx{0.0, -1.0} : cplx{0.0, 1.0};
  auto body = [&](long il) {
    const auto i = static_cast<std::size_t>(il);
    for (std::size_t j = 1; j + 1 < np; ++j) {
      const cplx dx = (f[g.index(i + 1, j)] - f[g.index(i - 1, j)]) * sx;
      const cplx dp = (f[g.index(i, j + 1)] - f[g.index(i, j - 1)]) * sp;
      out[g.index(i, j)] = dx + ip * dp;
    }
  };
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
    for (long i = 1; i < nx - 1; ++i) body(i);
  } else {
    for (long i = 1; i < nx - 1; ++i) body(i);
  }
  return out;
}

}  // namespace

std::vector<double> wigner_eom_kernel(const std::vector<double>& W, const PhaseGrid& grid, const ModelParams& p,
                                      Exec exec) {
  const std::size_t n = grid.size();
  std::vector<cplx> FW(n), FbW(n), dW(n), aW(n);
  for (std::size_t i = 0; i < grid.nx(); ++i) {
    for (std::size_t j = 0; j < grid.np(); ++j) {
      const std::size_t k = grid.index(i, j);
      const cplx a = grid.alpha(i, j);
      const cplx ab = std::conj(a);
      const double n2 = std::norm(a);
      // semiclassical drift i Delta alpha + G alphabar - eta alpha (|alpha|^2 - 1)
      const cplx F = cplx{0.0, p.Delta} * a + p.G * ab - p.eta * a * (n2 - 1.0);
      FW[k] = F * W[k];
      FbW[k] = std::conj(F) * W[k];
      dW[k] = (n2 - 0.5) * W[k];
      aW[k] = ab * W[k];
    }
  }
  const auto dA = [&](const std::vector<cplx>& f) { return wirtinger(f, grid, Dir::Alpha, exec); };
  const auto dB = [&](const std::vector<cplx>& f) { return wirtinger(f, grid, Dir::AlphaBar, exec); };
  const std::vector<cplx> drift1 = dA(FW);
  const std::vector<cplx> drift2 = dB(FbW);
  const std::vector<cplx> diff = dA(dB(dW));
  const std::vector<cplx> third = dA(dB(dB(aW)));
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 3; i + 3 < grid.nx(); ++i) {
    for (std::size_t j = 3; j + 3 < grid.np(); ++j) {
      const std::size_t k = grid.index(i, j);
      const cplx rhs = -(drift1[k] + drift2[k]) + 2.0 * p.eta * diff[k] + 0.25 * p.eta * (third[k] + std::conj(third[k]));
      out[k] = rhs.real();
    }
  }
  return out;
}

}  // namespace catron
