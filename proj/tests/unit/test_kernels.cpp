#include <cmath>

#include "catron/analytic.hpp"
#include "catron/fock.hpp"
#include "catron/kernels.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace catron;

// The parallel kernels must reproduce their serial references bit for bit.

TEST_CASE("fill_grid on the exact W: serial == parallel") {
  const ModelParams p = make_params(10, 7, 1);
  const PhaseGrid g = make_grid({-6, 6, -6, 6}, 121, 121);
  std::vector<double> s, q;
  auto f = [&](std::size_t i, std::size_t j) { return neg_log_w0_raw(g.alpha(i, j), p); };
  fill_grid(g, s, f, Exec::Serial);
  fill_grid(g, q, f, Exec::Parallel);
  CHECK(s == q);

  const LogWignerGrid es = neg_log_wigner_exact(g, p, Exec::Serial);
  const LogWignerGrid ep = neg_log_wigner_exact(g, p, Exec::Parallel);
  CHECK(es.neg_log_w == ep.neg_log_w);
  CHECK(es.ln_norm == ep.ln_norm);
  const LogWignerGrid ws = neg_log_wigner_wkb(g, p, es.ln_norm, Exec::Serial);
  const LogWignerGrid wp = neg_log_wigner_wkb(g, p, es.ln_norm, Exec::Parallel);
  CHECK(ws.valid == wp.valid);
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (ws.valid[k]) CHECK(ws.neg_log_w[k] == wp.neg_log_w[k]);
  }
}

TEST_CASE("wigner_fock_kernel: serial == parallel") {
  const std::size_t N = 30;
  auto gen = testing::rng(61);
  std::vector<cplx> rho(N * N, 0.0);
  for (std::size_t r = 0; r < 20; ++r)
    for (std::size_t c = 0; c <= r; ++c) {
      const cplx v = testing::uniform_c(gen, -1, 1) / static_cast<double>(1 + r + c);
      rho[r + c * N] = v;
      rho[c + r * N] = std::conj(v);
    }
  const PhaseGrid g = make_grid({-5, 5, -5, 5}, 81, 81);
  CHECK(wigner_fock_kernel(rho, N, g, Exec::Serial) == wigner_fock_kernel(rho, N, g, Exec::Parallel));
}

TEST_CASE("wigner_eom_kernel: serial == parallel") {
  const ModelParams p = make_params(10, 7, 1);
  const PhaseGrid g = make_grid({-4, 4, -4, 4}, 161, 161);
  std::vector<double> W;
  fill_grid(g, W, [&](std::size_t i, std::size_t j) { return std::exp(-neg_log_w0_raw(g.alpha(i, j), p)); });
  const auto s = wigner_eom_kernel(W, g, p, Exec::Serial);
  const auto q = wigner_eom_kernel(W, g, p, Exec::Parallel);
  CHECK(s == q);
  // Two-cell margin is left at zero.
  CHECK(s[g.index(0, 50)] == 0.0);
  CHECK(s[g.index(1, 50)] == 0.0);
  CHECK(s[g.index(50, g.np() - 2)] == 0.0);
}

TEST_CASE("Liouvillian assembly: serial == parallel") {
  const ModelParams p = make_params(4, 2, 1);
  const Superoperator s = build_liouvillian(p, 24, kMaxCutoff, Exec::Serial);
  const Superoperator q = build_liouvillian(p, 24, kMaxCutoff, Exec::Parallel);
  CHECK((s.m - q.m).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("Wigner transform and EOM residual wrappers: serial == parallel") {
  const ModelParams p = make_params(4, 2, 1);
  const std::size_t N = 24;
  const SteadyStateBasis B = steady_states(build_liouvillian(p, N));
  const PhaseGrid g = make_grid({-4, 4, -4, 4}, 61, 61);
  const WignerGrid a = wigner_from_density(B.physical.front(), g, Exec::Serial);
  const WignerGrid b = wigner_from_density(B.physical.front(), g, Exec::Parallel);
  CHECK(a.values == b.values);
  const EomResidual ra = wigner_eom_residual(a, p, {-3, 3, -3, 3}, Exec::Serial);
  const EomResidual rb = wigner_eom_residual(a, p, {-3, 3, -3, 3}, Exec::Parallel);
  CHECK(ra.residual == rb.residual);
  CHECK(ra.max_norm == rb.max_norm);
}
