#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace catron {

enum class ErrorCode {
  // model-core
  NonPositiveEta,
  NegativeDrive,
  DegenerateGrid,
  InvalidConfig,
  Io,
  // specfun
  PoleAtNonPositiveInteger,
  NoConvergence,
  DomainTooSmall,
  StiffnessFailure,
  // fock-numerics
  CutoffTooSmall,
  MemoryBudgetExceeded,
  RankDeficiencyAmbiguous,
  StepTooLarge,
  NoNonzeroEigenvalue,
  CutoffInadequate,
  GridTooCoarse,
  // analytic-wigner
  TurningPointProximity,
  BranchCutProximity,
  MassDeficient,
  // instanton
  NotBistable,
  SingularAtOrigin,
  NoEscapeDirection,
  DriftExceeded,
  OutsideAsymptoticWindow,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace catron
