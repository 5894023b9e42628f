#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <utility>

namespace catron::ode {

template <std::size_t K>
using State = std::array<std::complex<double>, K>;

struct Tolerance {
  double rtol = 1e-10;
  double atol = 1e-14;
  double h_init = 1e-3;
  double h_min = 1e-14;  // relative to the integration span
  double h_max = std::numeric_limits<double>::infinity();
  std::size_t max_steps = 2'000'000;
};

enum class Status { Ok, StepUnderflow, TooManySteps, Stopped };

struct Result {
  Status status = Status::Ok;
  double t = 0.0;
  std::size_t steps = 0;
  std::size_t rejected = 0;
};

namespace detail {
template <std::size_t K>
State<K> axpy(const State<K>& y, double h, std::initializer_list<std::pair<double, const State<K>*>> terms) {
  State<K> out = y;
  for (const auto& [c, k] : terms) {
    if (c == 0.0) continue;
    for (std::size_t i = 0; i < K; ++i) out[i] += h * c * (*k)[i];
  }
  return out;
}
}  // namespace detail

/// Adaptive Dormand-Prince 5(4) integration of y' = f(t, y) from t0 towards
/// t1 (either direction).  After every accepted step observer(t, y) is called;
/// returning false stops the integration with Status::Stopped.
template <std::size_t K, class F, class Obs>
Result dopri5(F&& f, State<K>& y, double t0, double t1, const Tolerance& tol, Obs&& observer) {
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                   a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                   e6 = 22.0 / 525, e7 = -1.0 / 40;

  Result res;
  res.t = t0;
  const double span = std::abs(t1 - t0);
  if (span == 0.0) return res;
  const double dir = t1 > t0 ? 1.0 : -1.0;
  double h = std::min(tol.h_init, span);
  double t = t0;
  State<K> k1 = f(t, y);
  while (dir * (t1 - t) > 1e-13 * span) {
    if (res.steps + res.rejected >= tol.max_steps) {
      res.status = Status::TooManySteps;
      break;
    }
    if (h < tol.h_min * std::max(1.0, span)) {
      res.status = Status::StepUnderflow;
      break;
    }
    h = std::min(h, tol.h_max);
    const double hs = dir * std::min(h, std::abs(t1 - t));
    using detail::axpy;
    const State<K> k2 = f(t + c2 * hs, axpy<K>(y, hs, {{a21, &k1}}));
    const State<K> k3 = f(t + c3 * hs, axpy<K>(y, hs, {{a31, &k1}, {a32, &k2}}));
    const State<K> k4 = f(t + c4 * hs, axpy<K>(y, hs, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
    const State<K> k5 = f(t + c5 * hs, axpy<K>(y, hs, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
    const State<K> k6 =
        f(t + hs, axpy<K>(y, hs, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
    const State<K> y5 = axpy<K>(y, hs, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
    const State<K> k7 = f(t + hs, y5);

    double err = 0.0;
    for (std::size_t i = 0; i < K; ++i) {
      const std::complex<double> e =
          hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double sc = tol.atol + tol.rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
      err = std::max(err, std::abs(e) / sc);
    }
    if (!std::isfinite(err)) err = std::numeric_limits<double>::max();

    if (err <= 1.0) {
      t += hs;
      y = y5;
      k1 = k7;
      ++res.steps;
      res.t = t;
      if (!observer(t, y)) {
        res.status = Status::Stopped;
        return res;
      }
    } else {
      ++res.rejected;
    }
    const double fac = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
    h = std::abs(hs) * fac;
  }
  return res;
}

template <std::size_t K, class F>
Result dopri5(F&& f, State<K>& y, double t0, double t1, const Tolerance& tol) {
  return dopri5<K>(std::forward<F>(f), y, t0, t1, tol, [](double, const State<K>&) { return true; });
}

}  // namespace catron::ode
