#include <cmath>
#include <numbers>

#include "catron/error.hpp"
#include "catron/specfun.hpp"

namespace catron {

namespace {

// B_{2k} / (2k (2k-1)) for k = 1..12
constexpr double kStirling[] = {
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
    77683.0 / 5796.0,
    -236364091.0 / 1506960.0,
};

constexpr double kShiftTo = 16.0;

cplx stirling(cplx z) {
  const cplx zi = 1.0 / z;
  const cplx zi2 = zi * zi;
  cplx corr = 0.0;
  cplx pw = zi;
  for (double c : kStirling) {
    corr += c * pw;
    pw *= zi2;
  }
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * std::numbers::pi) + corr;
}

}  // namespace

cplx ln_gamma(cplx z) {
  if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real())) {
    throw Error(ErrorCode::PoleAtNonPositiveInteger, "log Gamma pole at z = " + std::to_string(z.real()));
  }
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw Error(ErrorCode::NoConvergence, "log Gamma of a non-finite argument");
  }
  if (std::abs(z) >= kShiftTo && z.real() > 0.0) return stirling(z);

  // Recurrence up to the Stirling region.  Summing principal logs keeps the
  // branch cut on the negative real axis only.
  cplx shift = 0.0;
  cplx w = z;
  while (w.real() < kShiftTo) {
    shift += std::log(w);
    w += 1.0;
  }
  return stirling(w) - shift;
}

}  // namespace catron
