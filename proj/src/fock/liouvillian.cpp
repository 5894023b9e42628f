#include <cmath>
#include <string>

#include "catron/error.hpp"
#include "catron/fock.hpp"

namespace catron {

namespace {

// Fills the column of L that maps rho(k, l) = 1 into vec-space, i.e. the
// image of |k><l| (vec index k + l N).
void fill_column(Matrix& L, const Matrix& H, const ModelParams& p, Eigen::Index N, Eigen::Index k, Eigen::Index l) {
  const Eigen::Index col = k + l * N;
  const cplx mi{0.0, -1.0};
  // -i H |k><l|: rows (r, l) with H(r, k) != 0
  for (Eigen::Index r = std::max<Eigen::Index>(0, k - 2); r <= std::min(N - 1, k + 2); ++r) {
    if (H(r, k) != cplx{}) L(r + l * N, col) += mi * H(r, k);
  }
  // +i |k><l| H: rows (k, c) with H(l, c) != 0
  for (Eigen::Index c = std::max<Eigen::Index>(0, l - 2); c <= std::min(N - 1, l + 2); ++c) {
    if (H(l, c) != cplx{}) L(k + c * N, col) -= mi * H(l, c);
  }
  // eta a^2 |k><l| a^dag^2 -> |k-2><l-2|
  if (k >= 2 && l >= 2) {
    const double amp = std::sqrt(static_cast<double>(k * (k - 1)) * static_cast<double>(l * (l - 1)));
    L((k - 2) + (l - 2) * N, col) += p.eta * amp;
  }
  // -eta/2 {a^dag^2 a^2, |k><l|}
  L(col, col) -= 0.5 * p.eta * static_cast<double>(k * (k - 1) + l * (l - 1));
}

}  // namespace

Superoperator build_liouvillian(const ModelParams& p, std::size_t N, std::size_t max_cutoff, Exec exec) {
  if (N < 4) throw Error(ErrorCode::CutoffTooSmall, "Liouvillian needs N >= 4, got " + std::to_string(N));
  if (N > max_cutoff) {
    throw Error(ErrorCode::MemoryBudgetExceeded,
                "N = " + std::to_string(N) + " exceeds the dense cap " + std::to_string(max_cutoff));
  }
  const Matrix H = build_hamiltonian(p, N).m;
  const auto n = static_cast<Eigen::Index>(N);
  Superoperator S{Matrix::Zero(n * n, n * n), N};
  // Each column is written by exactly one iteration.
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
    for (Eigen::Index l = 0; l < n; ++l) {
      for (Eigen::Index k = 0; k < n; ++k) fill_column(S.m, H, p, n, k, l);
    }
  } else {
    for (Eigen::Index l = 0; l < n; ++l) {
      for (Eigen::Index k = 0; k < n; ++k) fill_column(S.m, H, p, n, k, l);
    }
  }
  return S;
}

namespace {
int row_parity(ParityBlock b) { return (b == ParityBlock::EvenEven || b == ParityBlock::EvenOdd) ? 0 : 1; }
int col_parity(ParityBlock b) { return (b == ParityBlock::EvenEven || b == ParityBlock::OddEven) ? 0 : 1; }
int block_of(std::size_t idx, std::size_t N) {
  const std::size_t r = idx % N;
  const std::size_t c = idx / N;
  return static_cast<int>((r % 2) * 2 + (c % 2));
}
}  // namespace

std::array<BlockMatrix, 4> parity_project(const Superoperator& S) {
  std::array<BlockMatrix, 4> out;
  const std::size_t N = S.N;
  for (std::size_t b = 0; b < 4; ++b) {
    BlockMatrix& B = out[b];
    B.which = kAllBlocks[b];
    B.N = N;
    const int rp = row_parity(B.which);
    const int cp = col_parity(B.which);
    for (std::size_t c = 0; c < N; ++c) {
      for (std::size_t r = 0; r < N; ++r) {
        if (static_cast<int>(r % 2) == rp && static_cast<int>(c % 2) == cp) B.indices.push_back(r + c * N);
      }
    }
    const auto d = static_cast<Eigen::Index>(B.indices.size());
    B.m.resize(d, d);
    for (Eigen::Index j = 0; j < d; ++j) {
      for (Eigen::Index i = 0; i < d; ++i) {
        B.m(i, j) = S.m(static_cast<Eigen::Index>(B.indices[static_cast<std::size_t>(i)]),
                        static_cast<Eigen::Index>(B.indices[static_cast<std::size_t>(j)]));
      }
    }
  }
  return out;
}

double off_block_norm(const Superoperator& S) {
  const std::size_t dim = S.N * S.N;
  double s = 0.0;
  for (std::size_t j = 0; j < dim; ++j) {
    const int bj = block_of(j, S.N);
    for (std::size_t i = 0; i < dim; ++i) {
      if (block_of(i, S.N) != bj) s += std::norm(S.m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
    }
  }
  return std::sqrt(s);
}

Matrix block_to_matrix(const BlockMatrix& b, const Vector& v) {
  Vector full = Vector::Zero(static_cast<Eigen::Index>(b.N * b.N));
  for (std::size_t i = 0; i < b.indices.size(); ++i) {
    full(static_cast<Eigen::Index>(b.indices[i])) = v(static_cast<Eigen::Index>(i));
  }
  return unvectorize(full, b.N);
}

}  // namespace catron
