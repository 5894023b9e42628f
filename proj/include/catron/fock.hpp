#pragma once

#include <array>
#include <cstddef>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "catron/kernels.hpp"
#include "catron/model.hpp"

namespace catron {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Dense operator on span{|0>, ..., |N-1>}.
struct FockOperator {
  Matrix m;
  std::size_t dim() const noexcept { return static_cast<std::size_t>(m.rows()); }
};

/// Dense map on column-stacked density matrices: vec(rho)[r + c N] = rho(r, c),
/// so that vec(A X B) = (B^T kron A) vec(X).
struct Superoperator {
  Matrix m;
  std::size_t N = 0;
};

struct DensityMatrix {
  Matrix rho;

  std::size_t dim() const noexcept { return static_cast<std::size_t>(rho.rows()); }
  cplx trace() const { return rho.trace(); }
  double hermiticity_error() const { return (rho - rho.adjoint()).cwiseAbs().maxCoeff(); }
  /// Smallest eigenvalue of the Hermitian part.
  double min_eigenvalue() const;
  /// Population of the top `levels` Fock states.
  double top_population(std::size_t levels) const;
};

inline constexpr std::size_t kMaxCutoff = 80;

FockOperator annihilation(std::size_t N);
/// H = -Delta a^dag a + (i G / 2)(a^dag^2 - a^2).  Throws CutoffTooSmall for N < 3.
FockOperator build_hamiltonian(const ModelParams& p, std::size_t N);
/// Jump operator a^2.
FockOperator jump_operator(std::size_t N);

/// L = -i[H, .] + eta D[a^2].  eta is taken as given (eta = 0 is allowed here,
/// giving the closed-system generator).  Throws CutoffTooSmall for N < 4 and
/// MemoryBudgetExceeded for N > max_cutoff.
Superoperator build_liouvillian(const ModelParams& p, std::size_t N, std::size_t max_cutoff = kMaxCutoff,
                                Exec exec = Exec::Parallel);

Vector vectorize(const Matrix& rho);
Matrix unvectorize(const Vector& v, std::size_t N);
/// Max absolute column sum.
double norm1(const Matrix& m);

enum class ParityBlock { EvenEven, OddOdd, EvenOdd, OddEven };
std::string_view to_string(ParityBlock b) noexcept;
inline constexpr std::array<ParityBlock, 4> kAllBlocks{ParityBlock::EvenEven, ParityBlock::OddOdd,
                                                       ParityBlock::EvenOdd, ParityBlock::OddEven};

/// Restriction of a superoperator to rho(r, c) with fixed parities of r and c.
struct BlockMatrix {
  ParityBlock which;
  std::size_t N = 0;
  std::vector<std::size_t> indices;  ///< positions in the column-stacked vector
  Matrix m;
};

std::array<BlockMatrix, 4> parity_project(const Superoperator& S);
/// Frobenius norm of the entries of S outside the four parity blocks.
double off_block_norm(const Superoperator& S);

/// Embeds a block vector back into an N x N matrix.
Matrix block_to_matrix(const BlockMatrix& b, const Vector& v);

struct SteadyStateBasis {
  /// Orthonormal (Frobenius) kernel elements, each supported on one block.
  std::vector<Matrix> kernel;
  std::vector<ParityBlock> kernel_block;
  /// Trace-one Hermitian representatives built from the kernel elements that
  /// carry trace (diagonal blocks only).
  std::vector<DensityMatrix> physical;
  /// Smallest singular value above the kernel divided by the largest kernel one.
  double gap_ratio = 0.0;
};

/// Kernel via singular value decomposition of each parity block.  Throws
/// RankDeficiencyAmbiguous when the kernel is not separated by >= 1e3.
SteadyStateBasis steady_states(const Superoperator& S);

/// Fixed-step RK4 on d vec(rho)/dt = L vec(rho).  Throws StepTooLarge when
/// dt * ||L||_1 > 0.1.
DensityMatrix evolve(const DensityMatrix& rho0, const Superoperator& S, double T, double dt);

/// Exact propagation exp(L T) rho0 through the eigendecomposition of every
/// parity block touched by rho0.
DensityMatrix evolve_spectral(const DensityMatrix& rho0, const Superoperator& S, double T);

struct BlockSpectrum {
  ParityBlock which;
  Vector eigenvalues;
  double norm = 0.0;  ///< ||block||_1
};

BlockSpectrum block_spectrum(const BlockMatrix& b);

/// Zero threshold used to separate the kernel from decaying modes.
double zero_threshold(const BlockSpectrum& s);

/// Smallest |Re lambda| above the zero threshold.  Throws NoNonzeroEigenvalue.
double decay_rate(const BlockSpectrum& s);

/// Displaced-parity Wigner transform (2/pi) Tr[rho D Pi D^dag] on the grid.
/// Throws CutoffInadequate when Tr[rho P_{n >= N-5}] > 1e-6.
WignerGrid wigner_from_density(const DensityMatrix& rho, const PhaseGrid& grid, Exec exec = Exec::Parallel);

struct EomResidual {
  std::vector<double> residual;  ///< zero outside the window
  double max_norm = 0.0;         ///< max |RHS| over the window
  double scale = 0.0;            ///< max |W| over the window
};

/// Centered finite-difference RHS of the Wigner equation of motion (drift,
/// diffusion and third-order terms) evaluated on the interior points whose
/// (x, p) lie inside `window`.
EomResidual wigner_eom_residual(const WignerGrid& W, const ModelParams& p, const GridBounds& window,
                                Exec exec = Exec::Parallel);

/// Runs wigner_eom_residual on W sampled at spacing h and h/2 over the same
/// window and returns the observed order log2(r_h / r_{h/2}).  Throws
/// GridTooCoarse when the order falls below 1.7 (including a residual that does
/// not shrink).
template <class WFun>
double eom_convergence_order(WFun&& w_of_alpha, const ModelParams& p, const GridBounds& window, double h);

}  // namespace catron

#include "catron/fock_inl.hpp"
