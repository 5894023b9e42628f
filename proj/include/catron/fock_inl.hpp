#pragma once

#include <cmath>
#include <string>

#include "catron/error.hpp"

namespace catron {

namespace detail {
// Grid with spacing h whose interior covers the window with a 4-cell margin.
inline PhaseGrid padded_grid(const GridBounds& window, double h) {
  const double margin = 4.0 * h;
  const auto nx = static_cast<std::size_t>(std::llround((window.x_max - window.x_min + 2.0 * margin) / h)) + 1;
  const auto np = static_cast<std::size_t>(std::llround((window.p_max - window.p_min + 2.0 * margin) / h)) + 1;
  return make_grid({window.x_min - margin, window.x_min - margin + static_cast<double>(nx - 1) * h,
                    window.p_min - margin, window.p_min - margin + static_cast<double>(np - 1) * h},
                   nx, np);
}
}  // namespace detail

template <class WFun>
double eom_convergence_order(WFun&& w_of_alpha, const ModelParams& p, const GridBounds& window, double h) {
  double r[2];
  for (int k = 0; k < 2; ++k) {
    const double hk = h / (1 << k);
    WignerGrid W;
    W.grid = detail::padded_grid(window, hk);
    fill_grid(W.grid, W.values, [&](std::size_t i, std::size_t j) { return w_of_alpha(W.grid.alpha(i, j)); });
    r[k] = wigner_eom_residual(W, p, window).max_norm;
  }
  const double order = std::log2(r[0] / r[1]);
  // Faster decay (a cancelling h^2 term) is not a coarse grid.
  if (!(order >= 1.7)) {
    throw Error(ErrorCode::GridTooCoarse, "observed finite-difference order " + std::to_string(order));
  }
  return order;
}

}  // namespace catron
