#pragma once

#include <cstdint>
#include <vector>

#include "catron/kernels.hpp"
#include "catron/model.hpp"
#include "catron/specfun.hpp"

namespace catron {

/// sqrt(Delta^2 - 4 eta G alpha^2) on the principal branch.  On the cut itself
/// (real negative radicand) the limit from Im < 0 is taken, which is the side
/// continuous with quadrants I and III.  Shared by the WKB, potential and
/// instanton code so that all of them sit on the same sheet.
cplx sqrt_discriminant(cplx alpha, const ModelParams& p) noexcept;

/// True where the radicand lies on (or within rel_tol of) the negative real axis.
bool near_branch_cut(cplx alpha, const ModelParams& p, double rel_tol = 1e-9) noexcept;

/// log Psi_1(alpha) with the normalization constant set to 1:
///   e^{2 sqrt(g) alpha} 1F1(i delta; 2 i delta; -4 sqrt(g) alpha).
LogComplex psi1_exact(cplx alpha, const ModelParams& p);

/// -ln W0(alpha) up to an additive constant: 2|alpha|^2 - 2 Re log Psi_1.
double neg_log_w0_raw(cplx alpha, const ModelParams& p);

/// -ln W on a grid together with a validity mask (0 = masked).
struct LogWignerGrid {
  PhaseGrid grid;
  std::vector<double> neg_log_w;
  std::vector<std::uint8_t> valid;
  /// Constant added to the raw values so that exp(-neg_log_w) integrates to 1
  /// for the exact solution; reused for WKB and potential grids.
  double ln_norm = 0.0;
};

/// Normalized exact stationary Wigner function; also returns its log form.
/// When the grid truncates more than 1e-6 of the mass the normalization is
/// computed on an enlarged square grid (up to |x|, |p| <= 16, else MassDeficient).
LogWignerGrid neg_log_wigner_exact(const PhaseGrid& grid, const ModelParams& p, Exec exec = Exec::Parallel);
WignerGrid wigner_exact(const PhaseGrid& grid, const ModelParams& p, Exec exec = Exec::Parallel);
WignerGrid to_wigner(const LogWignerGrid& lg);

enum class Branch { Plus, Minus };

/// One WKB branch: exponent phi_0 and transport amplitude A.
struct BranchFunction {
  Branch branch;
  cplx sqrt_term;  ///< sqrt_discriminant(alpha)
  cplx phi0;
  cplx amplitude;
};

/// Turning points sit where the radicand vanishes; WKB is refused within
/// |Delta^2 - 4 eta G alpha^2| < kTurningRadius * Delta^2.
inline constexpr double kTurningRadius = 1e-3;
bool near_turning_point(cplx alpha, const ModelParams& p) noexcept;

/// Throws TurningPointProximity, or SingularAtOrigin for the plus branch at 0.
BranchFunction branch_function(cplx alpha, const ModelParams& p, Branch branch);

/// log of A(alpha) exp(phi_0(alpha) / eta) for one branch.
LogComplex wkb_psi(cplx alpha, const ModelParams& p, Branch branch);

/// Matching coefficients of the two branches, per unit normalization:
///   C_pm = 2^{-i delta} Gamma(2 i delta) / Gamma(i delta) e^{-+ pi delta / 2}.
struct MatchedPsi {
  cplx log_c_plus;
  cplx log_c_minus;
};
MatchedPsi matched_coefficients(const ModelParams& p);

/// log of C_+ Psi_+ + C_- Psi_-; the plus branch is dropped at the origin where
/// its amplitude vanishes.  Throws TurningPointProximity.
LogComplex wkb_psi_matched(cplx alpha, const ModelParams& p, const MatchedPsi& c);

/// -ln W of the WKB solution with the given normalization constant (normally
/// the exact grid's ln_norm).  Turning-point neighbourhoods are masked.
LogWignerGrid neg_log_wigner_wkb(const PhaseGrid& grid, const ModelParams& p, double ln_norm,
                                 Exec exec = Exec::Parallel);
WignerGrid wigner_wkb(const PhaseGrid& grid, const ModelParams& p, double ln_norm, Exec exec = Exec::Parallel);

/// Phi = 2|alpha|^2 + (2/eta) Im[s - Delta ln((s + Delta)/eta)], s = sqrt_discriminant.
/// Throws NotBistable and BranchCutProximity.
double effective_potential(cplx alpha, const ModelParams& p);
/// Same, without the checks; on the cut it uses the Im < 0 limit.
double effective_potential_unchecked(cplx alpha, const ModelParams& p) noexcept;

/// -ln W approximated by Phi - 2 Re ln C_- + ln_norm; points on the branch cut
/// are masked.
LogWignerGrid neg_log_wigner_potential(const PhaseGrid& grid, const ModelParams& p, double ln_norm,
                                       Exec exec = Exec::Parallel);

/// Normalizes to unit d^2 alpha integral.  Throws MassDeficient when the
/// Gaussian envelope puts more than 1e-6 of the mass outside the grid.
WignerGrid normalize_wigner(WignerGrid w);

/// Branch-cut loci of sqrt_discriminant inside the grid, as (x, p) polylines.
std::vector<std::vector<Quadratures>> branch_cut_polylines(const PhaseGrid& grid, const ModelParams& p);

/// Locus where the two matched branch terms |C_+ Psi_+| and |C_- Psi_-| are
/// equal: sign changes of their log ratio along grid edges, linearly
/// interpolated.  Edges crossing the branch cut are skipped.
std::vector<Quadratures> switching_line(const PhaseGrid& grid, const ModelParams& p);

}  // namespace catron
