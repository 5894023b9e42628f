#include <cmath>
#include <string>

#include "catron/error.hpp"
#include "catron/fock.hpp"

namespace catron {

FockOperator annihilation(std::size_t N) {
  FockOperator a{Matrix::Zero(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(N))};
  for (std::size_t n = 1; n < N; ++n) {
    a.m(static_cast<Eigen::Index>(n - 1), static_cast<Eigen::Index>(n)) = std::sqrt(static_cast<double>(n));
  }
  return a;
}

FockOperator jump_operator(std::size_t N) {
  const Matrix a = annihilation(N).m;
  return {a * a};
}

FockOperator build_hamiltonian(const ModelParams& p, std::size_t N) {
  if (N < 3) {
    throw Error(ErrorCode::CutoffTooSmall, "Hamiltonian needs N >= 3, got " + std::to_string(N));
  }
  const auto n = static_cast<Eigen::Index>(N);
  FockOperator H{Matrix::Zero(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) H.m(k, k) = -p.Delta * static_cast<double>(k);
  for (Eigen::Index k = 0; k + 2 < n; ++k) {
    const double r = std::sqrt(static_cast<double>((k + 1) * (k + 2)));
    H.m(k + 2, k) = cplx{0.0, 0.5 * p.G * r};   // (iG/2) a^dag^2
    H.m(k, k + 2) = cplx{0.0, -0.5 * p.G * r};  // -(iG/2) a^2
  }
  return H;
}

double DensityMatrix::min_eigenvalue() const {
  const Matrix h = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double DensityMatrix::top_population(std::size_t levels) const {
  const std::size_t N = dim();
  double s = 0.0;
  for (std::size_t k = (levels >= N ? 0 : N - levels); k < N; ++k) {
    s += std::abs(rho(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)));
  }
  return s;
}

Vector vectorize(const Matrix& rho) {
  return Eigen::Map<const Vector>(rho.data(), rho.size());
}

Matrix unvectorize(const Vector& v, std::size_t N) {
  const auto n = static_cast<Eigen::Index>(N);
  return Eigen::Map<const Matrix>(v.data(), n, n);
}

double norm1(const Matrix& m) { return m.cwiseAbs().colwise().sum().maxCoeff(); }

std::string_view to_string(ParityBlock b) noexcept {
  switch (b) {
    case ParityBlock::EvenEven: return "even-even";
    case ParityBlock::OddOdd: return "odd-odd";
    case ParityBlock::EvenOdd: return "even-odd";
    case ParityBlock::OddEven: return "odd-even";
  }
  return "?";
}

}  // namespace catron
