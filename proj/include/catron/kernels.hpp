#pragma once

#include <cstddef>
#include <vector>

#include "catron/model.hpp"

namespace catron {

/// Every data-parallel kernel ships a serial reference with identical output.
enum class Exec { Serial, Parallel };

/// values[index(i, j)] = f(i, j) over the whole grid.
template <class F>
void fill_grid(const PhaseGrid& grid, std::vector<double>& values, F&& f, Exec exec = Exec::Parallel) {
  values.assign(grid.size(), 0.0);
  const auto nx = static_cast<long>(grid.nx());
  const std::size_t np = grid.np();
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 4)
    for (long i = 0; i < nx; ++i) {
      for (std::size_t j = 0; j < np; ++j) values[grid.index(static_cast<std::size_t>(i), j)] = f(static_cast<std::size_t>(i), j);
    }
  } else {
    for (long i = 0; i < nx; ++i) {
      for (std::size_t j = 0; j < np; ++j) values[grid.index(static_cast<std::size_t>(i), j)] = f(static_cast<std::size_t>(i), j);
    }
  }
}

/// Wigner function of a density matrix rho (column-major N x N, rho[m + n N] =
/// <m|rho|n>) on the grid, using the Laguerre form of the Fock matrix elements.
std::vector<double> wigner_fock_kernel(const std::vector<cplx>& rho, std::size_t N, const PhaseGrid& grid, Exec exec);

/// Finite-difference right-hand side of the Wigner equation of motion at the
/// interior points (two-cell margin); boundary entries are zero.
std::vector<double> wigner_eom_kernel(const std::vector<double>& W, const PhaseGrid& grid, const ModelParams& p,
                                      Exec exec);

}  // namespace catron
