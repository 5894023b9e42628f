#include <cmath>
#include <string>

#include "catron/error.hpp"
#include "catron/fock.hpp"

namespace catron {

DensityMatrix evolve(const DensityMatrix& rho0, const Superoperator& S, double T, double dt) {
  const double norm = norm1(S.m);
  if (!(dt > 0.0) || dt * norm > 0.1) {
    throw Error(ErrorCode::StepTooLarge,
                "dt * ||L||_1 = " + std::to_string(dt * norm) + " exceeds 0.1 (need dt <= " + std::to_string(0.1 / norm) + ")");
  }
  const auto steps = static_cast<long>(std::ceil(T / dt - 1e-12));
  const double h = steps > 0 ? T / static_cast<double>(steps) : 0.0;
  Vector y = vectorize(rho0.rho);
  for (long s = 0; s < steps; ++s) {
    const Vector k1 = S.m * y;
    const Vector k2 = S.m * (y + 0.5 * h * k1);
    const Vector k3 = S.m * (y + 0.5 * h * k2);
    const Vector k4 = S.m * (y + h * k3);
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return {unvectorize(y, S.N)};
}

DensityMatrix evolve_spectral(const DensityMatrix& rho0, const Superoperator& S, double T) {
  const Vector x0 = vectorize(rho0.rho);
  Vector x = Vector::Zero(x0.size());
  for (const BlockMatrix& B : parity_project(S)) {
    const auto d = static_cast<Eigen::Index>(B.indices.size());
    Vector xb(d);
    for (Eigen::Index i = 0; i < d; ++i) xb(i) = x0(static_cast<Eigen::Index>(B.indices[static_cast<std::size_t>(i)]));
    if (xb.norm() == 0.0) continue;
    Eigen::ComplexEigenSolver<Matrix> es(B.m, true);
    if (es.info() != Eigen::Success) throw Error(ErrorCode::NoConvergence, "eigendecomposition failed");
    const Matrix& V = es.eigenvectors();
    Vector c = V.partialPivLu().solve(xb);
    for (Eigen::Index i = 0; i < d; ++i) c(i) *= std::exp(es.eigenvalues()(i) * T);
    const Vector yb = V * c;
    for (Eigen::Index i = 0; i < d; ++i) x(static_cast<Eigen::Index>(B.indices[static_cast<std::size_t>(i)])) = yb(i);
  }
  return {unvectorize(x, S.N)};
}

}  // namespace catron
