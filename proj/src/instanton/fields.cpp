#include <cmath>
#include <numbers>

#include "catron/error.hpp"
#include "catron/instanton.hpp"

namespace catron {

namespace {
constexpr cplx I{0.0, 1.0};
}

FixedPoints fixed_points(const ModelParams& p) {
  if (!p.bistable) throw Error(ErrorCode::NotBistable, "fixed points need G > |Delta|");
  const double R = std::sqrt(p.G * p.G - p.Delta * p.Delta);
  const cplx a0 = std::sqrt(R / p.eta) * std::sqrt((R + I * p.Delta) / p.G);
  return {a0, 0.0};
}

cplx semiclassical_flow(cplx alpha, const ModelParams& p) noexcept {
  const cplx ab = std::conj(alpha);
  return I * p.Delta * alpha + p.G * ab - p.eta * alpha * alpha * ab;
}

KeldyshFields to_keldysh(const ChiAlphaFields& f) noexcept {
  constexpr double r2 = std::numbers::sqrt2;
  return {r2 * f.alpha, r2 * f.alpha_bar, -r2 * f.chi_bar, r2 * f.chi};
}

ChiAlphaFields from_keldysh(const KeldyshFields& k) noexcept {
  constexpr double r2 = std::numbers::sqrt2;
  return {k.alpha_cl / r2, k.alpha_cl_bar / r2, k.alpha_q_bar / r2, -k.alpha_q / r2};
}

cplx keldysh_density(const KeldyshFields& k, const ModelParams& p) noexcept {
  const cplx c = k.alpha_cl, cb = k.alpha_cl_bar, q = k.alpha_q, qb = k.alpha_q_bar;
  return I * p.Delta * (c * qb + q * cb) + p.G * (cb * qb - q * c) -
         0.5 * p.eta * (c * c * cb * qb - cb * cb * c * q + q * q * cb * qb - qb * qb * c * q + 4.0 * cb * c * qb * q);
}

KeldyshFields keldysh_rhs(const KeldyshFields& k, const ModelParams& p) noexcept {
  const cplx c = k.alpha_cl, cb = k.alpha_cl_bar, q = k.alpha_q, qb = k.alpha_q_bar;
  const double h = 0.5 * p.eta;
  KeldyshFields d;
  d.alpha_cl = I * p.Delta * c + p.G * cb - h * (cb * c * c + cb * q * q - 2.0 * qb * q * c + 4.0 * cb * c * q);
  d.alpha_cl_bar = -I * p.Delta * cb + p.G * c - h * (c * cb * cb + c * qb * qb - 2.0 * q * qb * cb - 4.0 * c * cb * qb);
  d.alpha_q = I * p.Delta * q + p.G * qb - h * (qb * c * c + qb * q * q - 2.0 * cb * q * c + 4.0 * qb * c * q);
  d.alpha_q_bar = -I * p.Delta * qb + p.G * q - h * (q * cb * cb + q * qb * qb - 2.0 * c * qb * cb - 4.0 * q * cb * qb);
  return d;
}

cplx effective_hamiltonian_L(const ChiAlphaFields& f, const ModelParams& p) noexcept {
  const cplx a = f.alpha, ab = f.alpha_bar, x = f.chi, xb = f.chi_bar;
  return I * p.Delta * (a * x - ab * xb) + p.G * (ab * x + a * xb) -
         p.eta * (ab * a * a * x + xb * ab * ab * a + xb * x * x * a + ab * xb * xb * x - 4.0 * ab * a * xb * x);
}

ChiAlphaFields chi_alpha_rhs(const ChiAlphaFields& f, const ModelParams& p) noexcept {
  const cplx a = f.alpha, ab = f.alpha_bar, x = f.chi, xb = f.chi_bar;
  ChiAlphaFields d;
  d.alpha = I * p.Delta * a + p.G * ab - p.eta * (ab * a * a + 2.0 * xb * x * a + ab * xb * xb - 4.0 * ab * a * xb);
  d.alpha_bar = -I * p.Delta * ab + p.G * a - p.eta * (ab * ab * a + x * x * a + 2.0 * ab * xb * x - 4.0 * ab * a * x);
  d.chi = -(I * p.Delta * x + p.G * xb - p.eta * (2.0 * ab * a * x + xb * ab * ab + xb * x * x - 4.0 * ab * xb * x));
  d.chi_bar =
      -(-I * p.Delta * xb + p.G * x - p.eta * (a * a * x + 2.0 * xb * ab * a + xb * xb * x - 4.0 * a * xb * x));
  return d;
}

cplx f_branch(cplx alpha, const ModelParams& p, Branch branch) {
  const cplx s = sqrt_discriminant(alpha, p);
  if (branch == Branch::Minus) {
    const cplx den = p.Delta + s;
    if (std::abs(den) == 0.0) return 0.0;  // alpha = 0 with Delta = 0
    return 2.0 * I * p.G * alpha / den;
  }
  if (std::abs(alpha) == 0.0) throw Error(ErrorCode::SingularAtOrigin, "f_+ diverges at alpha = 0");
  return I * (p.Delta + s) / (2.0 * p.eta * alpha);
}

cplx a1_term(cplx alpha, cplx f, const ModelParams& p) noexcept {
  return alpha * (I * p.Delta * f + alpha * (p.G - p.eta * f * f));
}

cplx a2_term(cplx alpha_bar, cplx f_bar, const ModelParams& p) noexcept {
  return alpha_bar * (-I * p.Delta * f_bar + alpha_bar * (p.G - p.eta * f_bar * f_bar));
}

cplx a3_term(cplx alpha, cplx alpha_bar, cplx f, cplx f_bar, const ModelParams& p) noexcept {
  return f_bar * alpha * (p.G - p.eta * f * f) + alpha_bar * f * (p.G - p.eta * f_bar * f_bar);
}

cplx quantum_field_chi(cplx alpha, const ModelParams& p) {
  if (!p.bistable) throw Error(ErrorCode::NotBistable, "quantum field needs G > |Delta|");
  if (near_branch_cut(alpha, p) && p.Delta != 0.0) {
    throw Error(ErrorCode::BranchCutProximity, "alpha lies on the branch cut of the quantum field");
  }
  return std::conj(alpha) + f_branch(alpha, p, Branch::Minus);
}

cplx manifold_flow(cplx alpha, const ModelParams& p) {
  const cplx x = std::conj(alpha) + f_branch(alpha, p, Branch::Minus);
  return chi_alpha_rhs({alpha, std::conj(alpha), x, std::conj(x)}, p).alpha;
}

}  // namespace catron
