#include <string>

#include "catron/error.hpp"
#include "catron/fock.hpp"

namespace catron {

WignerGrid wigner_from_density(const DensityMatrix& rho, const PhaseGrid& grid, Exec exec) {
  const std::size_t N = rho.dim();
  const double tail = rho.top_population(5);
  const double tr = std::abs(rho.trace());
  if (tail > 1e-6 * std::max(tr, 1e-300)) {
    throw Error(ErrorCode::CutoffInadequate,
                "population of the top five Fock levels is " + std::to_string(tail) + "; raise the cutoff");
  }
  std::vector<cplx> flat(rho.rho.data(), rho.rho.data() + rho.rho.size());
  WignerGrid w;
  w.grid = grid;
  w.values = wigner_fock_kernel(flat, N, grid, exec);
  w.quadrature_weight = integrate_alpha(grid, w.values);
  w.normalized = false;
  return w;
}

}  // namespace catron
