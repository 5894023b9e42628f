#include <cmath>

#include "catron/error.hpp"
#include "catron/ode.hpp"
#include "catron/specfun.hpp"

namespace catron {

namespace {

// Frobenius start values Psi(alpha), dPsi/dalpha near the regular singular
// point: Psi = sum_k c_k alpha^{2k}, c_k = 4G c_{k-1} / (2k (eta (2k - 1) + 2 i Delta)).
void frobenius_start(const ModelParams& p, cplx alpha, cplx& psi, cplx& dpsi) {
  const cplx a2 = alpha * alpha;
  cplx c = 1.0;
  cplx pw = 1.0;  // alpha^{2k}
  psi = 1.0;
  dpsi = 0.0;
  for (int k = 1; k < 200; ++k) {
    const double dk = k;
    c *= 4.0 * p.G / (2.0 * dk * (p.eta * (2.0 * dk - 1.0) + cplx{0.0, 2.0 * p.Delta}));
    dpsi += c * 2.0 * dk * pw * alpha;
    pw *= a2;
    const cplx t = c * pw;
    psi += t;
    if (std::abs(t) < 1e-18 * std::abs(psi)) break;
  }
}

}  // namespace

cplx psi1_ode_oracle(const ModelParams& p, cplx alpha, double rtol) {
  const double r_end = std::abs(alpha);
  if (r_end == 0.0) return 1.0;
  const cplx dir = alpha / r_end;
  const double r0 = std::min(0.05, r_end);
  ode::State<2> y{};
  frobenius_start(p, r0 * dir, y[0], y[1]);
  y[1] *= dir;  // d/dr
  if (r0 == r_end) return y[0];

  const cplx dir2 = dir * dir;
  auto rhs = [&](double r, const ode::State<2>& s) {
    const cplx al = r * dir;
    const cplx dpsi_dalpha = s[1] / dir;
    const cplx d2 = (4.0 * al * p.G * s[0] - cplx{0.0, 2.0 * p.Delta} * dpsi_dalpha) / (al * p.eta);
    return ode::State<2>{s[1], d2 * dir2};
  };
  ode::Tolerance tol;
  tol.rtol = rtol;
  tol.atol = rtol * 1e-6;
  tol.h_init = 1e-3;
  const auto res = ode::dopri5<2>(rhs, y, r0, r_end, tol);
  if (res.status != ode::Status::Ok) {
    throw Error(ErrorCode::StiffnessFailure, "Psi1 ODE oracle step size collapsed at r = " + std::to_string(res.t));
  }
  return y[0];
}

}  // namespace catron
