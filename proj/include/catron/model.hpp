#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace catron {

using cplx = std::complex<double>;

/// Physical parameters of the two-photon driven, two-photon dissipative cavity
/// (rotating frame of the pump, hbar = 1).  Use validate_params() to obtain a
/// checked instance with the derived ratios filled in.
struct ModelParams {
  double G = 10.0;      ///< two-photon drive amplitude
  double Delta = 7.0;   ///< detuning omega_p - omega_c
  double eta = 1.0;     ///< two-photon dissipation rate
  int fock_cutoff = 60; ///< truncated Fock dimension used by the brute-force solver

  // Derived by validate_params().
  double delta = 0.0;  ///< Delta / eta
  double g = 0.0;      ///< G / eta
  bool bistable = false;
};

/// Throws NonPositiveEta / NegativeDrive.  bistable is true iff G > |Delta|.
ModelParams validate_params(ModelParams p);

/// Shorthand for validate_params({G, Delta, eta}).
ModelParams make_params(double G, double Delta, double eta, int fock_cutoff = 60);

/// alpha = (x + i p) / sqrt(2)
cplx alpha_of_xy(double x, double p) noexcept;

struct Quadratures {
  double x;
  double p;
};

/// Inverse of alpha_of_xy: (sqrt(2) Re alpha, sqrt(2) Im alpha).
Quadratures xy_of_alpha(cplx alpha) noexcept;

struct GridBounds {
  double x_min = -6.0;
  double x_max = 6.0;
  double p_min = -6.0;
  double p_max = 6.0;
};

/// Uniform phase-space grid in quadrature coordinates.  Samples are stored
/// x-major: index(i, j) = i * np + j with i over x and j over p.
class PhaseGrid {
 public:
  PhaseGrid() = default;
  PhaseGrid(GridBounds bounds, std::size_t nx, std::size_t np);

  double x_min() const noexcept { return bounds_.x_min; }
  double x_max() const noexcept { return bounds_.x_max; }
  double p_min() const noexcept { return bounds_.p_min; }
  double p_max() const noexcept { return bounds_.p_max; }
  const GridBounds& bounds() const noexcept { return bounds_; }
  std::size_t nx() const noexcept { return nx_; }
  std::size_t np() const noexcept { return np_; }
  std::size_t size() const noexcept { return nx_ * np_; }
  double hx() const noexcept { return hx_; }
  double hp() const noexcept { return hp_; }

  double x(std::size_t i) const noexcept { return bounds_.x_min + static_cast<double>(i) * hx_; }
  double p(std::size_t j) const noexcept { return bounds_.p_min + static_cast<double>(j) * hp_; }
  cplx alpha(std::size_t i, std::size_t j) const noexcept { return alpha_of_xy(x(i), p(j)); }
  std::size_t index(std::size_t i, std::size_t j) const noexcept { return i * np_ + j; }

  /// Area element d^2 alpha = dRe(alpha) dIm(alpha) = hx * hp / 2.
  double cell_area_alpha() const noexcept { return 0.5 * hx_ * hp_; }

 private:
  GridBounds bounds_{};
  std::size_t nx_ = 0;
  std::size_t np_ = 0;
  double hx_ = 0.0;
  double hp_ = 0.0;
};

/// Throws DegenerateGrid when an extent is zero/non-finite or nx, np < 3.
PhaseGrid make_grid(GridBounds bounds, std::size_t nx, std::size_t np);

/// Real quasiprobability samples on a PhaseGrid.
struct WignerGrid {
  PhaseGrid grid;
  std::vector<double> values;
  /// Trapezoid integral of the samples (in d^2 alpha) before normalization;
  /// 1 when the samples were produced already normalized.
  double quadrature_weight = 1.0;
  bool normalized = false;

  double at(std::size_t i, std::size_t j) const { return values[grid.index(i, j)]; }
};

/// Trapezoid-rule integral of samples over the grid in d^2 alpha.
double integrate_alpha(const PhaseGrid& grid, const std::vector<double>& values);

}  // namespace catron
