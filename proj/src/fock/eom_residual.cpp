#include <algorithm>
#include <cmath>

#include "catron/fock.hpp"

namespace catron {

EomResidual wigner_eom_residual(const WignerGrid& W, const ModelParams& p, const GridBounds& window, Exec exec) {
  const PhaseGrid& g = W.grid;
  std::vector<double> rhs = wigner_eom_kernel(W.values, g, p, exec);
  EomResidual out;
  out.residual.assign(g.size(), 0.0);
  const double eps = 1e-9;
  for (std::size_t i = 3; i + 3 < g.nx(); ++i) {
    const double x = g.x(i);
    if (x < window.x_min - eps || x > window.x_max + eps) continue;
    for (std::size_t j = 3; j + 3 < g.np(); ++j) {
      const double pp = g.p(j);
      if (pp < window.p_min - eps || pp > window.p_max + eps) continue;
      const std::size_t k = g.index(i, j);
      out.residual[k] = rhs[k];
      out.max_norm = std::max(out.max_norm, std::abs(rhs[k]));
      out.scale = std::max(out.scale, std::abs(W.values[k]));
    }
  }
  return out;
}

}  // namespace catron
