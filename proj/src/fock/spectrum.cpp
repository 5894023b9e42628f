#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/SVD>

#include "catron/error.hpp"
#include "catron/fock.hpp"

namespace catron {

namespace {
constexpr double kKernelRel = 1e-9;  // sigma / sigma_max below this is kernel
constexpr double kRequiredGap = 1e3;
}  // namespace

SteadyStateBasis steady_states(const Superoperator& S) {
  SteadyStateBasis out;
  out.gap_ratio = std::numeric_limits<double>::infinity();
  for (const BlockMatrix& B : parity_project(S)) {
    Eigen::BDCSVD<Matrix> svd(B.m, Eigen::ComputeThinV);
    const Eigen::VectorXd& sv = svd.singularValues();  // descending
    const Eigen::Index d = sv.size();
    if (d == 0) continue;
    const double tol = kKernelRel * sv(0);
    Eigen::Index first_kernel = d;
    while (first_kernel > 0 && sv(first_kernel - 1) <= tol) --first_kernel;
    if (first_kernel < d) {
      if (first_kernel == 0) {
        throw Error(ErrorCode::RankDeficiencyAmbiguous, "block " + std::string(to_string(B.which)) + " is all kernel");
      }
      const double ratio = sv(first_kernel - 1) / std::max(sv(first_kernel), std::numeric_limits<double>::min());
      if (ratio < kRequiredGap) {
        throw Error(ErrorCode::RankDeficiencyAmbiguous,
                    "kernel of block " + std::string(to_string(B.which)) + " separated only by " + std::to_string(ratio));
      }
      out.gap_ratio = std::min(out.gap_ratio, ratio);
    } else if (sv(d - 1) < kRequiredGap * tol) {
      throw Error(ErrorCode::RankDeficiencyAmbiguous,
                  "block " + std::string(to_string(B.which)) + " has a singular value near the kernel threshold");
    }
    for (Eigen::Index k = first_kernel; k < d; ++k) {
      Matrix rho = block_to_matrix(B, svd.matrixV().col(k));
      rho /= rho.norm();
      out.kernel.push_back(rho);
      out.kernel_block.push_back(B.which);
      const cplx tr = rho.trace();
      if (std::abs(tr) > 1e-8) {
        Matrix phys = rho / tr;
        phys = 0.5 * (phys + phys.adjoint());
        out.physical.push_back(DensityMatrix{phys});
      }
    }
  }
  return out;
}

BlockSpectrum block_spectrum(const BlockMatrix& b) {
  Eigen::ComplexEigenSolver<Matrix> es(b.m, false);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::NoConvergence, "eigenvalue iteration failed");
  return {b.which, es.eigenvalues(), norm1(b.m)};
}

double zero_threshold(const BlockSpectrum& s) {
  return kRequiredGap * std::numeric_limits<double>::epsilon() * std::max(s.norm, 1.0);
}

double decay_rate(const BlockSpectrum& s) {
  const double thr = zero_threshold(s);
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 0; k < s.eigenvalues.size(); ++k) {
    const double r = std::abs(s.eigenvalues(k).real());
    if (r > thr) best = std::min(best, r);
  }
  if (!std::isfinite(best)) {
    throw Error(ErrorCode::NoNonzeroEigenvalue, "block " + std::string(to_string(s.which)) + " has no decaying mode");
  }
  return best;
}

}  // namespace catron
