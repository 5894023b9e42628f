#include "catron/model.hpp"

#include <cmath>
#include <string>

#include "catron/error.hpp"

namespace catron {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonPositiveEta: return "NonPositiveEta";
    case ErrorCode::NegativeDrive: return "NegativeDrive";
    case ErrorCode::DegenerateGrid: return "DegenerateGrid";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::Io: return "Io";
    case ErrorCode::PoleAtNonPositiveInteger: return "PoleAtNonPositiveInteger";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::DomainTooSmall: return "DomainTooSmall";
    case ErrorCode::StiffnessFailure: return "StiffnessFailure";
    case ErrorCode::CutoffTooSmall: return "CutoffTooSmall";
    case ErrorCode::MemoryBudgetExceeded: return "MemoryBudgetExceeded";
    case ErrorCode::RankDeficiencyAmbiguous: return "RankDeficiencyAmbiguous";
    case ErrorCode::StepTooLarge: return "StepTooLarge";
    case ErrorCode::NoNonzeroEigenvalue: return "NoNonzeroEigenvalue";
    case ErrorCode::CutoffInadequate: return "CutoffInadequate";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::TurningPointProximity: return "TurningPointProximity";
    case ErrorCode::BranchCutProximity: return "BranchCutProximity";
    case ErrorCode::MassDeficient: return "MassDeficient";
    case ErrorCode::NotBistable: return "NotBistable";
    case ErrorCode::SingularAtOrigin: return "SingularAtOrigin";
    case ErrorCode::NoEscapeDirection: return "NoEscapeDirection";
    case ErrorCode::DriftExceeded: return "DriftExceeded";
    case ErrorCode::OutsideAsymptoticWindow: return "OutsideAsymptoticWindow";
  }
  return "Unknown";
}

ModelParams validate_params(ModelParams p) {
  if (!(p.eta > 0.0) || !std::isfinite(p.eta)) {
    throw Error(ErrorCode::NonPositiveEta, "eta must be > 0, got " + std::to_string(p.eta));
  }
  if (!(p.G >= 0.0) || !std::isfinite(p.G)) {
    throw Error(ErrorCode::NegativeDrive, "G must be >= 0, got " + std::to_string(p.G));
  }
  if (!std::isfinite(p.Delta)) {
    throw Error(ErrorCode::InvalidConfig, "Delta must be finite");
  }
  p.delta = p.Delta / p.eta;
  p.g = p.G / p.eta;
  // G == |Delta| is the critical point: the fixed-point formula degenerates.
  p.bistable = p.G > std::abs(p.Delta);
  return p;
}

ModelParams make_params(double G, double Delta, double eta, int fock_cutoff) {
  ModelParams p;
  p.G = G;
  p.Delta = Delta;
  p.eta = eta;
  p.fock_cutoff = fock_cutoff;
  return validate_params(p);
}

cplx alpha_of_xy(double x, double p) noexcept {
  return {x * M_SQRT1_2, p * M_SQRT1_2};
}

Quadratures xy_of_alpha(cplx alpha) noexcept {
  return {alpha.real() * M_SQRT2, alpha.imag() * M_SQRT2};
}

PhaseGrid::PhaseGrid(GridBounds bounds, std::size_t nx, std::size_t np)
    : bounds_(bounds), nx_(nx), np_(np) {
  hx_ = (bounds.x_max - bounds.x_min) / static_cast<double>(nx - 1);
  hp_ = (bounds.p_max - bounds.p_min) / static_cast<double>(np - 1);
}

PhaseGrid make_grid(GridBounds bounds, std::size_t nx, std::size_t np) {
  const bool finite = std::isfinite(bounds.x_min) && std::isfinite(bounds.x_max) &&
                      std::isfinite(bounds.p_min) && std::isfinite(bounds.p_max);
  if (!finite) throw Error(ErrorCode::DegenerateGrid, "grid bounds must be finite");
  if (!(bounds.x_max > bounds.x_min) || !(bounds.p_max > bounds.p_min)) {
    throw Error(ErrorCode::DegenerateGrid, "grid extent must be positive in x and p");
  }
  if (nx < 3 || np < 3) {
    throw Error(ErrorCode::DegenerateGrid,
                "need at least 3 samples per axis, got " + std::to_string(nx) + "x" + std::to_string(np));
  }
  return PhaseGrid(bounds, nx, np);
}

double integrate_alpha(const PhaseGrid& grid, const std::vector<double>& values) {
  const std::size_t nx = grid.nx();
  const std::size_t np = grid.np();
  double sum = 0.0;
  double comp = 0.0;  // Kahan
  for (std::size_t i = 0; i < nx; ++i) {
    const double wx = (i == 0 || i == nx - 1) ? 0.5 : 1.0;
    for (std::size_t j = 0; j < np; ++j) {
      const double wp = (j == 0 || j == np - 1) ? 0.5 : 1.0;
      const double y = wx * wp * values[grid.index(i, j)] - comp;
      const double t = sum + y;
      comp = (t - sum) - y;
      sum = t;
    }
  }
  return sum * grid.cell_area_alpha();
}

}  // namespace catron
