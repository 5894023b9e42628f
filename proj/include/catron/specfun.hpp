#pragma once

#include <complex>

#include "catron/model.hpp"

namespace catron {

/// A complex number carried by its logarithm, so that magnitudes far outside
/// the double range can be combined without overflow.
struct LogComplex {
  cplx log{0.0, 0.0};

  cplx value() const { return std::exp(log); }
  double log_abs() const { return log.real(); }
  static LogComplex from_value(cplx v) { return {std::log(v)}; }
};

/// log(exp(x.log) + exp(y.log)), stable for any separation of magnitudes.
LogComplex log_add(LogComplex x, LogComplex y);
inline LogComplex operator*(LogComplex x, LogComplex y) { return {x.log + y.log}; }

/// Principal branch of log Gamma(z).  Throws PoleAtNonPositiveInteger.
cplx ln_gamma(cplx z);

struct KummerParams {
  cplx a;
  cplx b;
  double eps_tol = 1e-16;
};

/// Radius separating the Maclaurin series from the large-|z| expansion.
double kummer_crossover_radius(const KummerParams& kp);

/// Maclaurin series of 1F1(a; b; z) accumulated in double-double arithmetic.
/// Throws PoleAtNonPositiveInteger for b in {0, -1, ...} and NoConvergence when
/// the term cap is hit or cancellation exceeds the working precision.
cplx kummer_series(const KummerParams& kp, cplx z);

/// Large-|z| expansion of 1F1 in log space, each of the two asymptotic series
/// truncated at its smallest term.  Throws DomainTooSmall below the crossover.
LogComplex kummer_asymptotic(const KummerParams& kp, cplx z);

/// Dispatching evaluator: Kummer reflection to Re z >= 0, then series inside
/// the crossover radius and the asymptotic expansion outside.
LogComplex kummer_log(const KummerParams& kp, cplx z);
inline cplx kummer(const KummerParams& kp, cplx z) { return kummer_log(kp, z).value(); }

/// Independent evaluation of Psi_1(alpha) (normalized to Psi_1(0) = 1) by
/// adaptive Dormand-Prince integration of
///   alpha eta Psi'' + 2 i Delta Psi' - 4 alpha G Psi = 0
/// along the straight ray from the origin.  Throws StiffnessFailure.
cplx psi1_ode_oracle(const ModelParams& p, cplx alpha, double rtol = 1e-12);

/// Test hook: when enabled, kummer_log evaluates at -z instead of z.
void set_kummer_fault_injection(bool enabled) noexcept;
bool kummer_fault_injection() noexcept;

}  // namespace catron
