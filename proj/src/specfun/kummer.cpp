#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "catron/double_double.hpp"
#include "catron/error.hpp"
#include "catron/specfun.hpp"

namespace catron {

namespace {

std::atomic<bool> g_fault{false};

constexpr std::size_t kSeriesCap = 100'000;
constexpr std::size_t kAsymptoticCap = 2'000;
// Largest tolerated ratio between the biggest term and the final sum.  The
// double-double accumulator carries ~1e-32, so this keeps ~1e-10 relative.
constexpr double kMaxCancellation = 1e22;

bool is_nonpositive_integer(cplx z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

// Sum of (p)_n (q)_n / n! w^n truncated at its smallest term.
cplx asymptotic_series(cplx p, cplx q, cplx w) {
  cplx term = 1.0;
  cplx sum = 1.0;
  double prev = 1.0;
  for (std::size_t n = 0; n < kAsymptoticCap; ++n) {
    const double dn = static_cast<double>(n);
    const cplx next = term * (p + dn) * (q + dn) / (dn + 1.0) * w;
    const double mag = std::abs(next);
    if (mag == 0.0) break;            // terminating series
    if (mag >= prev) break;           // smallest term reached
    sum += next;
    term = next;
    prev = mag;
    if (mag < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

}  // namespace

void set_kummer_fault_injection(bool enabled) noexcept { g_fault.store(enabled); }
bool kummer_fault_injection() noexcept { return g_fault.load(); }

LogComplex log_add(LogComplex x, LogComplex y) {
  if (x.log.real() == -std::numeric_limits<double>::infinity()) return y;
  if (y.log.real() == -std::numeric_limits<double>::infinity()) return x;
  if (x.log.real() < y.log.real()) std::swap(x, y);
  return {x.log + std::log(1.0 + std::exp(y.log - x.log))};
}

double kummer_crossover_radius(const KummerParams& kp) {
  return std::max(25.0, 4.0 * std::abs(kp.b));
}

cplx kummer_series(const KummerParams& kp, cplx z) {
  if (is_nonpositive_integer(kp.b)) {
    throw Error(ErrorCode::PoleAtNonPositiveInteger, "1F1 lower parameter is a non-positive integer");
  }
  const dd::Complex a(kp.a);
  const dd::Complex b(kp.b);
  const dd::Complex zz(z);
  dd::Complex term(cplx{1.0, 0.0});
  dd::Complex sum(cplx{1.0, 0.0});
  double max_term = 1.0;
  int small_run = 0;
  for (std::size_t n = 0; n < kSeriesCap; ++n) {
    const dd::Real dn(static_cast<double>(n));
    const dd::Complex an{a.re + dn, a.im};
    const dd::Complex bn{b.re + dn, b.im};
    const dd::Complex zn{zz.re / dd::Real(static_cast<double>(n + 1)), zz.im / dd::Real(static_cast<double>(n + 1))};
    term = term * an / bn * zn;
    sum = sum + term;
    const double mag = term.abs_approx();
    const double smag = sum.abs_approx();
    max_term = std::max(max_term, mag);
    if (mag <= kp.eps_tol * smag) {
      if (++small_run >= 3) {
        if (max_term > kMaxCancellation * smag) {
          throw Error(ErrorCode::NoConvergence, "1F1 series cancellation beyond working precision");
        }
        return sum.to_complex();
      }
    } else {
      small_run = 0;
    }
  }
  throw Error(ErrorCode::NoConvergence, "1F1 series exceeded " + std::to_string(kSeriesCap) + " terms");
}

LogComplex kummer_asymptotic(const KummerParams& kp, cplx z) {
  const double radius = kummer_crossover_radius(kp);
  if (std::abs(z) < radius) {
    throw Error(ErrorCode::DomainTooSmall,
                "|z| = " + std::to_string(std::abs(z)) + " below crossover " + std::to_string(radius));
  }
  const cplx a = kp.a;
  const cplx b = kp.b;
  if (is_nonpositive_integer(b)) {
    throw Error(ErrorCode::PoleAtNonPositiveInteger, "1F1 lower parameter is a non-positive integer");
  }
  const cplx lgb = ln_gamma(b);
  LogComplex total{cplx{-std::numeric_limits<double>::infinity(), 0.0}};
  // Algebraic term, absent when 1/Gamma(b - a) vanishes.
  if (!is_nonpositive_integer(b - a)) {
    const cplx s1 = asymptotic_series(a, a - b + 1.0, -1.0 / z);
    const LogComplex t1{lgb - ln_gamma(b - a) - a * std::log(-z) + std::log(s1)};
    total = log_add(total, t1);
  }
  // Exponential term, absent when 1/Gamma(a) vanishes.
  if (!is_nonpositive_integer(a)) {
    const cplx s2 = asymptotic_series(b - a, 1.0 - a, 1.0 / z);
    const cplx lg_ratio = (a == b) ? cplx{0.0, 0.0} : lgb - ln_gamma(a);
    const LogComplex t2{lg_ratio + z + (a - b) * std::log(z) + std::log(s2)};
    total = log_add(total, t2);
  }
  return total;
}

LogComplex kummer_log(const KummerParams& kp, cplx z) {
  if (g_fault.load(std::memory_order_relaxed)) z = -z;
  cplx prefactor = 0.0;
  KummerParams q = kp;
  if (z.real() < 0.0) {
    // M(a, b, z) = e^z M(b - a, b, -z)
    prefactor = z;
    q.a = kp.b - kp.a;
    z = -z;
  }
  LogComplex m;
  if (std::abs(z) < kummer_crossover_radius(q)) {
    m = LogComplex::from_value(kummer_series(q, z));
  } else {
    m = kummer_asymptotic(q, z);
  }
  return {m.log + prefactor};
}

}  // namespace catron
