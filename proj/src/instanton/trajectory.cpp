#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "catron/error.hpp"
#include "catron/instanton.hpp"
#include "catron/ode.hpp"

namespace catron {

namespace {

struct Jacobian2 {
  double a, b, c, d;  // [[a, b], [c, d]] in (Re, Im) coordinates

  std::array<cplx, 2> eigenvalues() const {
    const double tr = a + d;
    const double det = a * d - b * c;
    const cplx disc = std::sqrt(cplx{0.25 * tr * tr - det, 0.0});
    return {0.5 * tr + disc, 0.5 * tr - disc};
  }
  // Eigenvector for a real eigenvalue lambda, as a complex number x + i y.
  cplx eigenvector(double lambda) const {
    const cplx v1{b, lambda - a};
    const cplx v2{lambda - d, c};
    const cplx v = std::abs(v1) >= std::abs(v2) ? v1 : v2;
    return v / std::abs(v);
  }
};

template <class F>
Jacobian2 fd_jacobian(F&& flow, cplx at, double h) {
  const cplx fx = (flow(at + h) - flow(at - h)) / (2.0 * h);
  const cplx fy = (flow(at + cplx{0.0, h}) - flow(at - cplx{0.0, h})) / (2.0 * h);
  return {fx.real(), fy.real(), fx.imag(), fy.imag()};
}

ModelParams mirrored(const ModelParams& p) {
  ModelParams q = p;
  q.Delta = -p.Delta;
  q.delta = -p.delta;
  return q;
}

// Integrand of the action, -2 (chi dalpha/dt - alphabar dchibar/dt), with
// dchibar/dt = conj(dchi/dt) on a conjugate-pair path.
cplx action_rate(cplx alpha, cplx chi, const ModelParams& p) {
  const ChiAlphaFields f{alpha, std::conj(alpha), chi, std::conj(chi)};
  const ChiAlphaFields d = chi_alpha_rhs(f, p);
  return -2.0 * (chi * d.alpha - f.alpha_bar * std::conj(d.chi));
}

InstantonTrajectory integrate_nonnegative_detuning(const ModelParams& p, Attractor which) {
  const cplx a0 = fixed_points(p).alpha0;
  const cplx target = which == Attractor::Plus ? a0 : -a0;
  const double scale = std::abs(a0);
  const double eps = 1e-6 * scale;       // launch offset from the saddle
  const double eps_end = 1e-10 * scale;  // stop once this close to the attractor
  const double R = std::sqrt(p.G * p.G - p.Delta * p.Delta);
  const auto flow = [&](cplx a) { return manifold_flow(a, p); };

  // The attractor must repel on the manifold, otherwise no instanton leaves it.
  double escape_rate;
  if (p.Delta == 0.0) {
    // Real-axis reduction; the radicand's cut runs along the real axis.
    escape_rate = ((flow(target + 1e-6 * target) - flow(target - 1e-6 * target)) / (2e-6 * target)).real();
  } else {
    const auto ev = fd_jacobian(flow, target, 1e-6 * scale).eigenvalues();
    escape_rate = std::max(ev[0].real(), ev[1].real());
  }
  if (!(escape_rate > 0.0)) {
    throw Error(ErrorCode::NoEscapeDirection, "attractor is not repelling on the zero-energy manifold");
  }

  // Stable direction of the saddle on the manifold.
  std::array<cplx, 2> directions;
  if (p.Delta == 0.0) {
    directions = {cplx{1.0, 0.0}, cplx{-1.0, 0.0}};
  } else {
    const Jacobian2 J = fd_jacobian(flow, cplx{0.0, 0.0}, 1e-7 * scale);
    const auto ev = J.eigenvalues();
    const double ls = std::min(ev[0].real(), ev[1].real());
    if (std::abs(ev[0].imag()) > 1e-9 * R || !(ls < 0.0)) {
      throw Error(ErrorCode::NoEscapeDirection, "origin is not a saddle of the manifold flow");
    }
    const cplx v = J.eigenvector(ls);
    directions = {v, -v};
  }
  if ((std::conj(target) * directions[0]).real() < 0.0) std::swap(directions[0], directions[1]);

  ode::Tolerance tol;
  tol.rtol = 1e-11;
  tol.atol = 1e-17 * scale;
  tol.h_init = 1e-3 / R;
  tol.h_max = 0.01 / R;

  for (const cplx dir : directions) {
    std::vector<InstantonSample> back;
    ode::State<2> y{eps * dir, 0.0};
    const auto rhs = [&](double, const ode::State<2>& s) {
      const cplx x = quantum_field_chi(s[0], p);
      return ode::State<2>{manifold_flow(s[0], p), action_rate(s[0], x, p)};
    };
    const auto record = [&](double t, const ode::State<2>& s) {
      const cplx x = quantum_field_chi(s[0], p);
      const cplx L = effective_hamiltonian_L({s[0], std::conj(s[0]), x, std::conj(x)}, p);
      back.push_back({t, {s[0], x, L}, s[1]});
      return std::abs(s[0] - target) > eps_end && std::abs(s[0]) < 4.0 * scale;
    };
    record(0.0, y);
    const auto res = ode::dopri5<2>(rhs, y, 0.0, -400.0 / R, tol, record);
    if (res.status != ode::Status::Stopped || std::abs(y[0] - target) > eps_end) continue;

    InstantonTrajectory traj;
    traj.which = which;
    const double t_start = back.back().t;
    const cplx s_start = back.back().action;
    for (auto it = back.rbegin(); it != back.rend(); ++it) {
      InstantonSample s = *it;
      s.t -= t_start;
      s.action -= s_start;
      traj.samples.push_back(s);
      traj.max_abs_L = std::max(traj.max_abs_L, std::abs(s.point.L_value));
    }
    traj.start = traj.samples.front().point.alpha;
    traj.end = traj.samples.back().point.alpha;
    traj.escape_offset = std::abs(traj.start - target);
    const double Lscale = (p.G + std::abs(p.Delta)) * std::pow(1.0 + scale, 4);
    if (traj.max_abs_L > 1e-6 * Lscale) {
      throw Error(ErrorCode::DriftExceeded, "|L| along the instanton reached " + std::to_string(traj.max_abs_L));
    }
    return traj;
  }
  throw Error(ErrorCode::NoEscapeDirection, "no manifold orbit connects the saddle to the attractor");
}

}  // namespace

InstantonTrajectory integrate_instanton(const ModelParams& p, Attractor which) {
  if (!p.bistable) throw Error(ErrorCode::NotBistable, "instanton needs G > |Delta|");
  if (p.Delta >= 0.0) return integrate_nonnegative_detuning(p, which);
  // (Delta, alpha, chi) -> (-Delta, conj alpha, conj chi) maps solutions to solutions.
  InstantonTrajectory t = integrate_nonnegative_detuning(mirrored(p), which);
  for (auto& s : t.samples) {
    s.point.alpha = std::conj(s.point.alpha);
    s.point.chi = std::conj(s.point.chi);
    s.point.L_value = std::conj(s.point.L_value);
    s.action = std::conj(s.action);
  }
  t.start = std::conj(t.start);
  t.end = std::conj(t.end);
  return t;
}

ActionResult instanton_action(const InstantonTrajectory& traj, const ModelParams& p) {
  // Composite Simpson rule in t on the non-uniform sample times, using the
  // integrand -2 (chi dalpha/dt - alphabar dchibar/dt) evaluated at each sample.
  const auto& s = traj.samples;
  if (s.size() < 2) return {0.0, 0.0};
  std::vector<cplx> g(s.size());
  for (std::size_t k = 0; k < s.size(); ++k) g[k] = action_rate(s[k].point.alpha, s[k].point.chi, p);
  cplx total = 0.0;
  std::size_t k = 0;
  for (; k + 2 < s.size(); k += 2) {
    const double h0 = s[k + 1].t - s[k].t;
    const double h1 = s[k + 2].t - s[k + 1].t;
    const double H = h0 + h1;
    total += H / 6.0 * ((2.0 - h1 / h0) * g[k] + H * H / (h0 * h1) * g[k + 1] + (2.0 - h0 / h1) * g[k + 2]);
  }
  if (k + 1 < s.size()) total += 0.5 * (s[k + 1].t - s[k].t) * (g[k] + g[k + 1]);
  return {total.real(), std::abs(total.imag())};
}

DownhillPath downhill_path(const ModelParams& p, Attractor target_which) {
  const cplx a0 = fixed_points(p).alpha0;
  const cplx target = target_which == Attractor::Plus ? a0 : -a0;
  const double scale = std::abs(a0);
  const double R = std::sqrt(p.G * p.G - p.Delta * p.Delta);
  // Unstable direction of i Delta alpha + G alphabar: (Delta, G - R) in (Re, Im),
  // or the real axis when Delta = 0.
  cplx v = p.Delta == 0.0 ? cplx{1.0, 0.0} : cplx{p.Delta, p.G - R};
  v /= std::abs(v);
  if ((std::conj(target) * v).real() < 0.0) v = -v;
  DownhillPath path;
  ode::State<1> y{1e-6 * scale * v};
  path.samples.push_back({0.0, y[0]});
  ode::Tolerance tol;
  tol.rtol = 1e-10;
  tol.atol = 1e-14 * scale;
  tol.h_init = 1e-3 / R;
  tol.h_max = 0.02 / R;
  const auto rhs = [&](double, const ode::State<1>& s) { return ode::State<1>{semiclassical_flow(s[0], p)}; };
  ode::dopri5<1>(rhs, y, 0.0, 400.0 / R, tol, [&](double t, const ode::State<1>& s) {
    path.samples.push_back({t, s[0]});
    return std::abs(s[0] - target) > 1e-4 * scale;
  });
  path.end = y[0];
  return path;
}

ShootingDiagnostic full_field_shooting(const ModelParams& p) {
  const InstantonTrajectory ref = integrate_instanton(p, Attractor::Plus);
  const cplx a0 = fixed_points(p).alpha0;
  const double T = ref.samples.back().t;
  const double r = ref.escape_offset;
  ShootingDiagnostic out;
  out.reduced_angle = std::arg(ref.start - a0);

  ode::Tolerance tol;
  tol.rtol = 1e-9;
  tol.atol = 1e-13;
  tol.h_init = 1e-4;
  const auto shoot = [&](double angle, double* maxL) {
    const cplx a = a0 + std::polar(r, angle);
    const cplx x = quantum_field_chi(a, p);
    ode::State<4> y{a, std::conj(a), x, std::conj(x)};
    double miss = std::abs(a);
    const auto rhs = [&](double, const ode::State<4>& s) {
      const ChiAlphaFields d = chi_alpha_rhs({s[0], s[1], s[2], s[3]}, p);
      return ode::State<4>{d.alpha, d.alpha_bar, d.chi, d.chi_bar};
    };
    ode::dopri5<4>(rhs, y, 0.0, T, tol, [&](double, const ode::State<4>& s) {
      miss = std::min(miss, std::abs(s[0]));
      if (maxL) *maxL = std::max(*maxL, std::abs(effective_hamiltonian_L({s[0], s[1], s[2], s[3]}, p)));
      return std::abs(s[0]) < 10.0 * std::abs(a0);
    });
    return miss;
  };
  // Golden-section search around the reduced launch angle.
  double lo = out.reduced_angle - 0.2;
  double hi = out.reduced_angle + 0.2;
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = hi - gr * (hi - lo);
  double d = lo + gr * (hi - lo);
  double fc = shoot(c, nullptr);
  double fd = shoot(d, nullptr);
  for (int it = 0; it < 40; ++it) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - gr * (hi - lo);
      fc = shoot(c, nullptr);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + gr * (hi - lo);
      fd = shoot(d, nullptr);
    }
  }
  out.best_angle = 0.5 * (lo + hi);
  out.miss_distance = shoot(out.best_angle, &out.max_abs_L);
  return out;
}

}  // namespace catron
