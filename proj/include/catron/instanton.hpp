#pragma once

#include <vector>

#include "catron/analytic.hpp"
#include "catron/model.hpp"

namespace catron {

struct FixedPoints {
  cplx alpha0;  ///< attractor; -alpha0 is the other one
  cplx saddle;  ///< always 0
};

/// alpha0 = sqrt(R/eta) sqrt((R + i Delta)/G), R = sqrt(G^2 - Delta^2).  Throws NotBistable.
FixedPoints fixed_points(const ModelParams& p);

/// d alpha / dt = i Delta alpha + G alphabar - eta alpha^2 alphabar.
cplx semiclassical_flow(cplx alpha, const ModelParams& p) noexcept;

/// Fields of the Keldysh action; the barred components are independent.
struct KeldyshFields {
  cplx alpha_cl;
  cplx alpha_cl_bar;
  cplx alpha_q;
  cplx alpha_q_bar;
};

/// Classical/quantum pair used by the effective Hamiltonian L; barred
/// components are independent unless a conjugate pair is supplied.
struct ChiAlphaFields {
  cplx alpha;
  cplx alpha_bar;
  cplx chi;
  cplx chi_bar;
};

/// alpha_cl = sqrt2 alpha, alphabar_cl = sqrt2 alphabar, alpha_q = -sqrt2 chibar, alphabar_q = sqrt2 chi.
KeldyshFields to_keldysh(const ChiAlphaFields& f) noexcept;
ChiAlphaFields from_keldysh(const KeldyshFields& k) noexcept;

/// Liouvillian density of the Keldysh action; equals 2 L at to_keldysh(f).
cplx keldysh_density(const KeldyshFields& k, const ModelParams& p) noexcept;
/// Time derivatives generated by keldysh_density:
///   d alpha_cl = dL/d alphabar_q, d alpha_q = dL/d alphabar_cl,
///   d alphabar_cl = -dL/d alpha_q, d alphabar_q = -dL/d alpha_cl.
KeldyshFields keldysh_rhs(const KeldyshFields& k, const ModelParams& p) noexcept;

/// L = i Delta (alpha chi - alphabar chibar) + G (alphabar chi + alpha chibar)
///     - eta (alphabar alpha alpha chi + chibar alphabar alphabar alpha
///            + chibar chi chi alpha + alphabar chibar chibar chi - 4 alphabar alpha chibar chi).
cplx effective_hamiltonian_L(const ChiAlphaFields& f, const ModelParams& p) noexcept;

/// d alpha = dL/d chi, d chi = -dL/d alpha, d alphabar = dL/d chibar, d chibar = -dL/d alphabar.
ChiAlphaFields chi_alpha_rhs(const ChiAlphaFields& f, const ModelParams& p) noexcept;

/// f_pm = i (Delta pm s) / (2 eta alpha), s = sqrt_discriminant(alpha).  The minus
/// branch is evaluated as 2 i G alpha / (Delta + s), regular at the origin.
/// Throws SingularAtOrigin for the plus branch at alpha = 0.
cplx f_branch(cplx alpha, const ModelParams& p, Branch branch);

/// Pieces of L on the ansatz chi = alphabar + f(alpha), chibar = alpha + fbar(alphabar).
cplx a1_term(cplx alpha, cplx f, const ModelParams& p) noexcept;
cplx a2_term(cplx alpha_bar, cplx f_bar, const ModelParams& p) noexcept;
cplx a3_term(cplx alpha, cplx alpha_bar, cplx f, cplx f_bar, const ModelParams& p) noexcept;

/// chi = alphabar + f_-(alpha).  Throws NotBistable, BranchCutProximity.
cplx quantum_field_chi(cplx alpha, const ModelParams& p);

/// Reduced flow on the zero-energy manifold: d alpha/dt with chi slaved to alpha.
cplx manifold_flow(cplx alpha, const ModelParams& p);

struct InstantonPoint {
  cplx alpha;
  cplx chi;
  cplx L_value;
};

struct InstantonSample {
  double t;
  InstantonPoint point;
  cplx action;  ///< running -2 int (chi dalpha - alphabar dchibar)
};

enum class Attractor { Plus, Minus };

struct InstantonTrajectory {
  Attractor which = Attractor::Plus;
  std::vector<InstantonSample> samples;  ///< time-ordered, attractor first, saddle last
  cplx start;
  cplx end;
  double max_abs_L = 0.0;
  double escape_offset = 0.0;  ///< |start - attractor|
};

/// Instanton from the attractor to the saddle on the reduced manifold.  The
/// attractor is a source of the reduced flow, so the unique connecting orbit is
/// found by integrating backwards in time from the saddle's stable direction.
/// Throws NotBistable, NoEscapeDirection, DriftExceeded.
InstantonTrajectory integrate_instanton(const ModelParams& p, Attractor which = Attractor::Plus);

struct ActionResult {
  double value;         ///< real part of iS
  double imag_residue;  ///< |Im iS|
};

/// Simpson quadrature in t of -2 (chi dalpha/dt - alphabar dchibar/dt) over the samples.
ActionResult instanton_action(const InstantonTrajectory& traj, const ModelParams& p);

/// Semiclassical path from the saddle to an attractor (zero action).
struct DownhillPath {
  std::vector<std::pair<double, cplx>> samples;
  cplx end;
};
DownhillPath downhill_path(const ModelParams& p, Attractor target);

struct RateResult {
  double ln_rate = 0.0;                ///< exponent of the switching rate
  double potential_difference = 0.0;   ///< Phi(alpha0) - Phi(0)
  bool consistent = false;             ///< |ln_rate - potential_difference| <= 1e-10 (1 + |ln_rate|)
  ModelParams params;
  bool bistable = false;
};

/// ln Gamma = -2 R/eta + (2 Delta/eta) arctan(R/Delta) with |Delta|.  Throws NotBistable.
RateResult ln_rate_closed_form(const ModelParams& p);

/// -4 sqrt2 (G - Delta)^{3/2} / (3 eta sqrt G) for 0 <= (G - |Delta|)/G <= 0.05.
/// Throws OutsideAsymptoticWindow.
double ln_rate_critical(const ModelParams& p);

struct RateRow {
  double G;
  double Delta;
  double eta;
  double ln_rate;
  double ln_rate_critical;  ///< NaN outside the near-critical window
};

/// ln Gamma(Delta) for Delta = G k / n_delta, k = 0 .. n_delta - 1, per G.
std::vector<RateRow> rate_sweep(const std::vector<double>& G_list, std::size_t n_delta, double eta);

/// Diagnostic shooting in the full four-field system: launches from a ring of
/// radius escape_offset around alpha0 (chi slaved to the manifold), integrates
/// chi_alpha_rhs for the instanton's duration and minimizes the miss distance
/// to the saddle over the launch angle.  Tolerances are relaxed.
struct ShootingDiagnostic {
  double best_angle = 0.0;     ///< launch angle of the best full-field shot
  double reduced_angle = 0.0;  ///< launch angle of the reduced-manifold instanton
  double miss_distance = 0.0;  ///< closest approach of the best shot to the saddle
  double max_abs_L = 0.0;
};
ShootingDiagnostic full_field_shooting(const ModelParams& p);

}  // namespace catron
