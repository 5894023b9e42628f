#pragma once

#include <cmath>
#include <complex>

// Double-double arithmetic (about 32 significant digits) built on error-free
// transformations.  Only what the Kummer series needs is provided.
namespace catron::dd {

struct Real {
  double hi = 0.0;
  double lo = 0.0;

  Real() = default;
  Real(double h) : hi(h) {}  // NOLINT(google-explicit-constructor)
  Real(double h, double l) : hi(h), lo(l) {}
  double to_double() const noexcept { return hi + lo; }
};

inline Real two_sum(double a, double b) noexcept {
  const double s = a + b;
  const double bb = s - a;
  const double e = (a - (s - bb)) + (b - bb);
  return {s, e};
}

inline Real quick_two_sum(double a, double b) noexcept {
  const double s = a + b;
  return {s, b - (s - a)};
}

inline Real two_prod(double a, double b) noexcept {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline Real operator+(Real x, Real y) noexcept {
  Real s = two_sum(x.hi, y.hi);
  Real t = two_sum(x.lo, y.lo);
  s.lo += t.hi;
  s = quick_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return quick_two_sum(s.hi, s.lo);
}

inline Real operator-(Real x) noexcept { return {-x.hi, -x.lo}; }
inline Real operator-(Real x, Real y) noexcept { return x + (-y); }

inline Real operator*(Real x, Real y) noexcept {
  Real p = two_prod(x.hi, y.hi);
  p.lo += x.hi * y.lo + x.lo * y.hi;
  return quick_two_sum(p.hi, p.lo);
}

inline Real operator/(Real x, Real y) {
  const double q1 = x.hi / y.hi;
  Real r = x - y * Real(q1);
  const double q2 = r.hi / y.hi;
  r = r - y * Real(q2);
  const double q3 = r.hi / y.hi;
  Real q = quick_two_sum(q1, q2);
  return q + Real(q3);
}

struct Complex {
  Real re;
  Real im;

  Complex() = default;
  Complex(Real r, Real i) : re(r), im(i) {}
  Complex(std::complex<double> z) : re(z.real()), im(z.imag()) {}  // NOLINT(google-explicit-constructor)
  std::complex<double> to_complex() const noexcept { return {re.to_double(), im.to_double()}; }
  double abs_approx() const noexcept { return std::hypot(re.hi, im.hi); }
};

inline Complex operator+(const Complex& x, const Complex& y) noexcept { return {x.re + y.re, x.im + y.im}; }
inline Complex operator-(const Complex& x, const Complex& y) noexcept { return {x.re - y.re, x.im - y.im}; }

inline Complex operator*(const Complex& x, const Complex& y) noexcept {
  return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
}

inline Complex operator/(const Complex& x, const Complex& y) {
  const Real den = y.re * y.re + y.im * y.im;
  const Real nr = x.re * y.re + x.im * y.im;
  const Real ni = x.im * y.re - x.re * y.im;
  return {nr / den, ni / den};
}

}  // namespace catron::dd
