#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include <Eigen/QR>

#include "catron/acceptance.hpp"
#include "catron/analytic.hpp"
#include "catron/commands.hpp"
#include "catron/error.hpp"
#include "catron/fock.hpp"
#include "catron/instanton.hpp"
#include "catron/kernels.hpp"
#include "catron/specfun.hpp"

namespace catron {

namespace {

// Pinned tolerances.
constexpr double kA1MaxRelError = 1e-3;      // max |W_exact - W_fock| / max W_exact
constexpr double kA2OrderLo = 1.7;
constexpr double kA2OrderHi = 2.3;
constexpr double kA3MaxRelError = 0.05;      // relative error of -ln W
constexpr double kA3WindowLo = 2.0;
constexpr double kA3WindowHi = 30.0;
constexpr double kA4GradientTol = 1e-6;      // |chi - dPhi/dalpha / 2|
constexpr double kA4ActionRelTol = 1e-3;
constexpr double kA5LimitRelTol = 1e-8;
constexpr double kA5Slope = 1.5;
constexpr double kA5SlopeTol = 0.015;
constexpr double kA6SlopeTol = 0.2;
constexpr double kA6MinR2 = 0.98;
constexpr double kA6CutoffRelChange = 1e-3;
constexpr double kA7PeakCells = 3.0;         // distance of the -ln W minima from +-alpha0, in grid cells
constexpr double kA7EndpointTol = 1e-12;     // |ln Gamma(0) + 2G/eta|
constexpr double kA7AxisBand = 0.1;          // ridge census ignores |x| or |p| below this
constexpr double kA8OracleRelTol = 1e-7;
constexpr double kA8KummerIdentityTol = 1e-9;

using Metrics = std::vector<std::pair<std::string, double>>;

double rel_log_diff(const LogComplex& a, const LogComplex& b) { return std::abs(std::exp(a.log - b.log) - 1.0); }

// ---------------------------------------------------------------------------
// A1: exact Wigner function vs least-squares matched Fock steady state.

CriterionResult a1() {
  CriterionResult r;
  const ModelParams p = make_params(10.0, 7.0, 1.0);
  const std::size_t N = 60;
  const PhaseGrid grid = make_grid({-6.0, 6.0, -6.0, 6.0}, 241, 241);

  const WignerGrid exact = wigner_exact(grid, p);
  const Superoperator S = build_liouvillian(p, N);
  const SteadyStateBasis basis = steady_states(S);

  // Real basis of Hermitian kernel elements: trace-one representatives of the
  // diagonal blocks and Hermitian parts of the coherence blocks.
  std::vector<Matrix> herm;
  for (const auto& d : basis.physical) herm.push_back(d.rho);
  for (std::size_t k = 0; k < basis.kernel.size(); ++k) {
    const ParityBlock b = basis.kernel_block[k];
    if (b == ParityBlock::EvenOdd || b == ParityBlock::OddEven) {
      const Matrix& K = basis.kernel[k];
      herm.push_back(K + K.adjoint());
      herm.push_back(cplx{0.0, 1.0} * (K - K.adjoint()));
    }
  }
  for (const auto& d : basis.physical) {
    if (d.top_population(5) > 1e-6) throw Error(ErrorCode::CutoffInadequate, "steady state leaks into the top levels");
  }
  const auto M = static_cast<Eigen::Index>(grid.size());
  Eigen::MatrixXd A(M, static_cast<Eigen::Index>(herm.size()));
  for (std::size_t k = 0; k < herm.size(); ++k) {
    std::vector<cplx> flat(herm[k].data(), herm[k].data() + herm[k].size());
    const std::vector<double> w = wigner_fock_kernel(flat, N, grid, Exec::Parallel);
    for (Eigen::Index i = 0; i < M; ++i) A(i, static_cast<Eigen::Index>(k)) = w[static_cast<std::size_t>(i)];
  }
  const Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(exact.values.data(), M);
  const Eigen::VectorXd c = A.colPivHouseholderQr().solve(y);
  const Eigen::VectorXd res = A * c - y;
  const double wmax = y.cwiseAbs().maxCoeff();
  const double err = res.cwiseAbs().maxCoeff() / wmax;
  r.metrics = {{"max_rel_error", err}, {"kernel_dim", static_cast<double>(basis.kernel.size())}, {"cutoff", 60.0}};
  r.pass = err <= kA1MaxRelError;
  return r;
}

// ---------------------------------------------------------------------------
// A2: Richardson order of the Wigner equation residual for the exact W0.

CriterionResult a2() {
  CriterionResult r;
  const ModelParams p = make_params(10.0, 7.0, 1.0);
  const GridBounds window{-4.0, 4.0, -4.0, 4.0};
  const double shift = neg_log_w0_raw(fixed_points(p).alpha0, p);
  const double hs[3] = {0.1, 0.05, 0.025};
  double res[3];
  for (int k = 0; k < 3; ++k) {
    WignerGrid W;
    W.grid = detail::padded_grid(window, hs[k]);
    fill_grid(W.grid, W.values,
              [&](std::size_t i, std::size_t j) { return std::exp(shift - neg_log_w0_raw(W.grid.alpha(i, j), p)); });
    res[k] = wigner_eom_residual(W, p, window).max_norm;
  }
  const double o1 = std::log2(res[0] / res[1]);
  const double o2 = std::log2(res[1] / res[2]);
  r.metrics = {{"order_0.1_0.05", o1}, {"order_0.05_0.025", o2}, {"residual_0.025", res[2]}};
  r.pass = o1 >= kA2OrderLo && o1 <= kA2OrderHi && o2 >= kA2OrderLo && o2 <= kA2OrderHi;
  return r;
}

// ---------------------------------------------------------------------------
// A3: WKB -ln W against the exact one in quadrant I.

CriterionResult a3() {
  CriterionResult r;
  const ModelParams p = make_params(10.0, 7.0, 1.0);
  const double ln_norm = neg_log_wigner_exact(make_grid({-6.0, 6.0, -6.0, 6.0}, 241, 241), p).ln_norm;
  const PhaseGrid q1 = make_grid({0.0, 6.0, 0.0, 6.0}, 121, 121);
  std::vector<double> ex;
  fill_grid(q1, ex, [&](std::size_t i, std::size_t j) { return neg_log_w0_raw(q1.alpha(i, j), p) + ln_norm; });
  const LogWignerGrid wkb = neg_log_wigner_wkb(q1, p, ln_norm);
  double worst = 0.0;
  std::size_t used = 0;
  for (std::size_t k = 0; k < q1.size(); ++k) {
    if (!wkb.valid[k] || ex[k] < kA3WindowLo || ex[k] > kA3WindowHi) continue;
    worst = std::max(worst, std::abs(wkb.neg_log_w[k] - ex[k]) / std::abs(ex[k]));
    ++used;
  }
  r.metrics = {{"max_rel_error", worst}, {"points", static_cast<double>(used)}};
  r.pass = used > 0 && worst <= kA3MaxRelError;
  return r;
}

// ---------------------------------------------------------------------------
// A4: gradient relation and instanton action.

cplx wirtinger_dphi(cplx a, const ModelParams& p) {
  const double h = 1e-3;
  const auto d = [&](cplx dir) {
    return (-effective_potential(a + 2.0 * h * dir, p) + 8.0 * effective_potential(a + h * dir, p) -
            8.0 * effective_potential(a - h * dir, p) + effective_potential(a - 2.0 * h * dir, p)) /
           (12.0 * h);
  };
  return 0.5 * (d(1.0) - cplx{0.0, 1.0} * d(cplx{0.0, 1.0}));
}

CriterionResult a4(std::mt19937_64& rng) {
  CriterionResult r;
  const ModelParams p = make_params(10.0, 7.0, 1.0);
  std::uniform_real_distribution<double> u(0.05, 4.0);
  double worst_grad = 0.0;
  int tested = 0;
  while (tested < 1000) {
    const cplx a{u(rng), u(rng)};
    if (std::abs(p.Delta * p.Delta - 4.0 * p.eta * p.G * a * a) < 1e-2 * p.Delta * p.Delta) continue;
    const cplx chi = quantum_field_chi(a, p);
    const cplx half_grad = 0.5 * wirtinger_dphi(a, p);
    worst_grad = std::max(worst_grad, std::abs(chi - half_grad));
    ++tested;
  }
  std::uniform_real_distribution<double> ug(2.0, 10.0), ud(-0.9, 0.9), ue(0.5, 2.0);
  double worst_action = 0.0;
  for (int k = 0; k < 10; ++k) {
    const double G = ug(rng);
    const ModelParams q = make_params(G, ud(rng) * G, ue(rng));
    const auto traj = integrate_instanton(q);
    const double s = instanton_action(traj, q).value;
    const double ref = ln_rate_closed_form(q).ln_rate;
    worst_action = std::max(worst_action, std::abs(s - ref) / std::abs(ref));
  }
  r.metrics = {{"max_gradient_error", worst_grad}, {"max_action_rel_error", worst_action}};
  r.pass = worst_grad <= kA4GradientTol && worst_action <= kA4ActionRelTol;
  return r;
}

// ---------------------------------------------------------------------------
// A5: rate limits.

double fit_slope(const std::vector<double>& x, const std::vector<double>& y, double* r2 = nullptr) {
  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    mx += x[k];
    my += y[k];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxx += (x[k] - mx) * (x[k] - mx);
    sxy += (x[k] - mx) * (y[k] - my);
    syy += (y[k] - my) * (y[k] - my);
  }
  if (r2) *r2 = sxy * sxy / (sxx * syy);
  return sxy / sxx;
}

CriterionResult a5() {
  CriterionResult r;
  const double G = 10.0, eta = 1.0;
  const double lim = ln_rate_closed_form(make_params(G, 1e-6 * G, eta)).ln_rate;
  const double lim_err = std::abs(lim + 2.0 * G / eta) / (2.0 * G / eta);
  std::vector<double> lx, ly;
  for (int k = 0; k <= 40; ++k) {
    const double rel = std::pow(10.0, -4.0 + 2.0 * k / 40.0);
    const double gap = rel * G;
    lx.push_back(std::log(gap));
    ly.push_back(std::log(-ln_rate_closed_form(make_params(G, G - gap, eta)).ln_rate));
  }
  const double slope = fit_slope(lx, ly);
  r.metrics = {{"limit_rel_error", lim_err}, {"critical_slope", slope}};
  r.pass = lim_err <= kA5LimitRelTol && std::abs(slope - kA5Slope) <= kA5SlopeTol;
  if (lim_err > kA5LimitRelTol) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "ln Gamma(Delta=1e-6 G) differs from -2G/eta by %.3g relative; the linear term pi Delta/eta alone is %.3g",
                  lim_err, std::numbers::pi * 1e-6 * G / eta / (2.0 * G / eta));
    r.detail = buf;
  }
  return r;
}

// ---------------------------------------------------------------------------
// A6: Liouvillian decay rates vs the closed-form exponent.

std::array<double, 4> block_rates(const ModelParams& p, std::size_t N) {
  const Superoperator S = build_liouvillian(p, N);
  const auto blocks = parity_project(S);
  std::array<double, 4> out{};
  for (std::size_t b = 0; b < 4; ++b) out[b] = decay_rate(block_spectrum(blocks[b]));
  return out;
}

CriterionResult a6() {
  CriterionResult r;
  const double Gs[5] = {3.0, 3.5, 4.0, 4.5, 5.0};
  std::vector<double> x;
  std::array<std::vector<double>, 4> y;
  double max_cutoff = 0.0;
  for (const double G : Gs) {
    const ModelParams p = make_params(G, 0.5 * G, 1.0);
    std::size_t N = 30;
    std::array<double, 4> prev = block_rates(p, N);
    std::array<double, 4> cur = prev;
    for (N = 40; N <= 60; N += 10) {
      cur = block_rates(p, N);
      double change = 0.0;
      for (std::size_t b = 0; b < 4; ++b) change = std::max(change, std::abs(cur[b] - prev[b]) / cur[b]);
      if (change < kA6CutoffRelChange) break;
      prev = cur;
    }
    max_cutoff = std::max(max_cutoff, static_cast<double>(std::min<std::size_t>(N, 60)));
    x.push_back(ln_rate_closed_form(p).ln_rate);
    for (std::size_t b = 0; b < 4; ++b) y[b].push_back(std::log(cur[b]));
  }
  double best_dev = std::numeric_limits<double>::infinity();
  double best_slope = 0.0, best_r2 = 0.0;
  std::size_t best = 0;
  for (std::size_t b = 0; b < 4; ++b) {
    double r2 = 0.0;
    const double s = fit_slope(x, y[b], &r2);
    r.metrics.push_back({"slope_" + std::string(to_string(kAllBlocks[b])), s});
    r.metrics.push_back({"r2_" + std::string(to_string(kAllBlocks[b])), r2});
    if (std::abs(s - 1.0) < best_dev) {
      best_dev = std::abs(s - 1.0);
      best_slope = s;
      best_r2 = r2;
      best = b;
    }
  }
  r.metrics.push_back({"best_slope", best_slope});
  r.metrics.push_back({"best_r2", best_r2});
  r.metrics.push_back({"max_cutoff", max_cutoff});
  r.pass = std::abs(best_slope - 1.0) <= kA6SlopeTol && best_r2 >= kA6MinR2;
  r.detail = "best block " + std::string(to_string(kAllBlocks[best]));
  return r;
}

// ---------------------------------------------------------------------------
// A7: features of the CLI outputs.

struct Csv {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::size_t col(const std::string& name) const {
    for (std::size_t k = 0; k < columns.size(); ++k) {
      if (columns[k] == name) return k;
    }
    throw Error(ErrorCode::Io, "missing column " + name);
  }
};

Csv read_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::Io, "cannot read " + path);
  Csv c;
  std::string line;
  bool header = false;
  while (std::getline(f, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    std::string item;
    if (!header) {
      while (std::getline(ss, item, ',')) c.columns.push_back(item);
      header = true;
      continue;
    }
    std::vector<double> row;
    while (std::getline(ss, item, ',')) row.push_back(std::strtod(item.c_str(), nullptr));
    c.rows.push_back(std::move(row));
  }
  return c;
}

// Grid CSV (x, p, value) back into an nx x np array.
struct GridData {
  std::vector<double> xs, ps, v;
  double at(std::size_t i, std::size_t j) const { return v[i * ps.size() + j]; }
};

GridData read_grid(const std::string& path) {
  const Csv c = read_csv(path);
  GridData g;
  for (const auto& row : c.rows) {
    if (g.xs.empty() || g.xs.back() != row[0]) g.xs.push_back(row[0]);
    if (g.xs.size() == 1) g.ps.push_back(row[1]);
    g.v.push_back(row[2]);
  }
  return g;
}

CriterionResult a7(const AcceptanceContext& ctx) {
  CriterionResult r;
  RunConfig cfg;
  cfg.out_dir = ctx.scratch_dir;
  cfg.seed = ctx.seed;
  cfg.params = validate_params(cfg.params);
  const ModelParams& p = cfg.params;
  const cplx a0 = fixed_points(p).alpha0;
  const Quadratures q0 = xy_of_alpha(a0);
  std::vector<std::string> failures;

  // Figure 1: minima of -ln W at +-alpha0 and a saddle at the origin.
  cmd_wigner(cfg, WignerSource::Exact);
  const GridData ex = read_grid(cfg.out_dir + "/neg_log_wigner_exact.csv");
  const double h = ex.xs[1] - ex.xs[0];
  std::vector<std::pair<double, double>> minima;
  double gmin = std::numeric_limits<double>::infinity();
  for (double v : ex.v) gmin = std::min(gmin, v);
  for (std::size_t i = 1; i + 1 < ex.xs.size(); ++i) {
    for (std::size_t j = 1; j + 1 < ex.ps.size(); ++j) {
      const double v = ex.at(i, j);
      bool is_min = v < gmin + 1.0;
      for (int di = -1; di <= 1 && is_min; ++di) {
        for (int dj = -1; dj <= 1; ++dj) {
          if ((di || dj) && ex.at(i + di, j + dj) <= v) is_min = false;
        }
      }
      if (is_min) minima.push_back({ex.xs[i], ex.ps[j]});
    }
  }
  double peak_cells = std::numeric_limits<double>::infinity();
  if (minima.size() == 2) {
    double d = 0.0;
    for (const auto& [x, pp] : minima) {
      const double dp = std::hypot(x - q0.x, pp - q0.p);
      const double dm = std::hypot(x + q0.x, pp + q0.p);
      d = std::max(d, std::min(dp, dm) / h);
    }
    peak_cells = d;
  }
  if (minima.size() != 2 || peak_cells > kA7PeakCells) failures.push_back("minima");
  const std::size_t ic = ex.xs.size() / 2, jc = ex.ps.size() / 2;
  const double fxx = ex.at(ic + 1, jc) - 2.0 * ex.at(ic, jc) + ex.at(ic - 1, jc);
  const double fpp = ex.at(ic, jc + 1) - 2.0 * ex.at(ic, jc) + ex.at(ic, jc - 1);
  const double fxp = 0.25 * (ex.at(ic + 1, jc + 1) - ex.at(ic + 1, jc - 1) - ex.at(ic - 1, jc + 1) + ex.at(ic - 1, jc - 1));
  const double det = fxx * fpp - fxp * fxp;
  if (!(det < 0.0)) failures.push_back("origin saddle");

  // Mountain range: WKB ridges of -ln W (local maxima along p) only in quadrants II and IV.
  cmd_wigner(cfg, WignerSource::Wkb);
  const GridData wk = read_grid(cfg.out_dir + "/neg_log_wigner_wkb.csv");
  std::array<int, 4> ridges{};
  for (std::size_t i = 1; i + 1 < wk.xs.size(); ++i) {
    for (std::size_t j = 1; j + 1 < wk.ps.size(); ++j) {
      const double v = wk.at(i, j), lo = wk.at(i, j - 1), hi = wk.at(i, j + 1);
      if (std::isnan(v) || std::isnan(lo) || std::isnan(hi) || v > 30.0) continue;
      if (v > lo && v > hi && v - 0.5 * (lo + hi) > 1e-3) {
        const double x = wk.xs[i], pp = wk.ps[j];
        // Both branches are comparable on the real segment between the turning
        // points, so rows next to the axes carry their own fringes.
        if (std::abs(x) <= kA7AxisBand || std::abs(pp) <= kA7AxisBand) continue;
        ridges[x > 0 ? (pp > 0 ? 0 : 3) : (pp > 0 ? 1 : 2)]++;
      }
    }
  }
  if (ridges[1] < 5 || ridges[3] < 5 || ridges[0] > 0 || ridges[2] > 0) failures.push_back("mountain range");

  // Figure 2: fixed points, uphill instanton alpha0 -> 0, downhill 0 -> attractor.
  cmd_phase_portrait(cfg);
  const Csv fp = read_csv(cfg.out_dir + "/fixed_points.csv");
  bool has0 = false, hasp = false, hasm = false;
  for (const auto& row : fp.rows) {
    const cplx a = alpha_of_xy(row[fp.col("x")], row[fp.col("p")]);
    has0 |= std::abs(a) < 1e-12;
    hasp |= std::abs(a - a0) < 1e-10;
    hasm |= std::abs(a + a0) < 1e-10;
  }
  if (!(has0 && hasp && hasm)) failures.push_back("fixed points");
  const Csv up = read_csv(cfg.out_dir + "/instanton_uphill.csv");
  const cplx up0 = alpha_of_xy(up.rows.front()[up.col("x")], up.rows.front()[up.col("p")]);
  const cplx up1 = alpha_of_xy(up.rows.back()[up.col("x")], up.rows.back()[up.col("p")]);
  if (std::abs(up0 - a0) > 1e-4 * std::abs(a0) || std::abs(up1) > 1e-4 * std::abs(a0)) failures.push_back("uphill");
  const Csv dn = read_csv(cfg.out_dir + "/downhill.csv");
  const cplx dn0 = alpha_of_xy(dn.rows.front()[dn.col("x")], dn.rows.front()[dn.col("p")]);
  const cplx dn1 = alpha_of_xy(dn.rows.back()[dn.col("x")], dn.rows.back()[dn.col("p")]);
  if (std::abs(dn0) > 1e-4 * std::abs(a0) ||
      std::min(std::abs(dn1 - a0), std::abs(dn1 + a0)) > 1e-3 * std::abs(a0)) {
    failures.push_back("downhill");
  }

  // Figure 3: three monotone curves ending at -2G/eta.
  cmd_rate(cfg, false, false);
  const Csv rt = read_csv(cfg.out_dir + "/rates.csv");
  std::map<double, std::vector<std::pair<double, double>>> curves;
  for (const auto& row : rt.rows) curves[row[rt.col("G")]].push_back({row[rt.col("Delta")], row[rt.col("ln_rate")]});
  double endpoint_err = 0.0;
  bool monotone = curves.size() == 3;
  for (auto& [G, c] : curves) {
    std::sort(c.begin(), c.end());
    endpoint_err = std::max(endpoint_err, std::abs(c.front().second + 2.0 * G / p.eta));
    for (std::size_t k = 1; k < c.size(); ++k) monotone &= c[k].second > c[k - 1].second;
    monotone &= c.back().second < 0.0;
  }
  const bool expected_G = curves.count(5.0) && curves.count(6.0) && curves.count(7.0);
  if (!monotone || !expected_G || endpoint_err > kA7EndpointTol) failures.push_back("rate curves");

  r.metrics = {{"minima", static_cast<double>(minima.size())},
               {"minimum_offset_cells", peak_cells},
               {"origin_hessian_det", det},
               {"ridges_QI", static_cast<double>(ridges[0])},
               {"ridges_QII", static_cast<double>(ridges[1])},
               {"ridges_QIII", static_cast<double>(ridges[2])},
               {"ridges_QIV", static_cast<double>(ridges[3])},
               {"rate_endpoint_error", endpoint_err}};
  r.pass = failures.empty();
  for (const auto& f : failures) r.detail += (r.detail.empty() ? "failed: " : ", ") + f;
  return r;
}

// ---------------------------------------------------------------------------
// A8: special functions against the ODE oracle and the double-double series.

CriterionResult a8(std::mt19937_64& rng) {
  CriterionResult r;
  const ModelParams p = make_params(10.0, 7.0, 1.0);
  std::uniform_real_distribution<double> u01(0.0, 1.0);

  double worst_ode = 0.0;
  for (int k = 0; k < 40; ++k) {
    const cplx a = std::polar(4.2 * std::sqrt(u01(rng)), 2.0 * std::numbers::pi * u01(rng));
    const cplx ode = psi1_ode_oracle(p, a);
    worst_ode = std::max(worst_ode, rel_log_diff(psi1_exact(a, p), LogComplex::from_value(ode)));
  }

  // Production evaluator (reflection / asymptotics) vs the raw extended-precision series.
  const KummerParams kp{cplx{0.0, p.delta}, cplx{0.0, 2.0 * p.delta}};
  const double rc = kummer_crossover_radius(kp);
  double worst_series = 0.0;
  for (int k = 0; k < 200; ++k) {
    // The raw series loses e^{-Re z} digits, so on the left half-plane it is
    // only a usable oracle up to |z| = 40.
    const double theta = 2.0 * std::numbers::pi * u01(rng);
    const double rmax = std::cos(theta) < 0.0 ? 40.0 : rc;
    const cplx z = std::polar(rmax * std::sqrt(u01(rng)), theta);
    worst_series =
        std::max(worst_series, rel_log_diff(kummer_log(kp, z), LogComplex::from_value(kummer_series(kp, z))));
  }

  // Kummer transformation on random parameters, both sides by the series.
  std::uniform_real_distribution<double> ua(-6.0, 6.0);
  double worst_identity = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const cplx a{ua(rng), ua(rng)};
    cplx b{ua(rng), ua(rng)};
    if (std::abs(b.imag()) < 0.5 && b.real() < 0.5) b += 1.0;  // stay away from the poles
    const cplx z = std::polar(20.0 * std::sqrt(u01(rng)), 2.0 * std::numbers::pi * u01(rng));
    const cplx lhs = kummer_series({a, b}, z);
    const cplx rhs = std::exp(z) * kummer_series({b - a, b}, -z);
    const double scale = std::max(std::abs(lhs), 1e-300);
    worst_identity = std::max(worst_identity, std::abs(lhs - rhs) / scale);
  }
  r.metrics = {{"ode_oracle_rel_error", worst_ode},
               {"series_rel_error", worst_series},
               {"kummer_identity_rel_error", worst_identity}};
  r.pass = worst_ode <= kA8OracleRelTol && worst_series <= kA8OracleRelTol && worst_identity <= kA8KummerIdentityTol;
  return r;
}

const std::map<std::string, std::string>& titles() {
  static const std::map<std::string, std::string> t = {
      {"A1", "exact Wigner vs Fock steady state"},
      {"A2", "Wigner equation residual order"},
      {"A3", "WKB quality in quadrant I"},
      {"A4", "gradient relation and instanton action"},
      {"A5", "rate limits"},
      {"A6", "exponent vs Liouvillian spectrum"},
      {"A7", "figure data features"},
      {"A8", "special functions"},
  };
  return t;
}

}  // namespace

const std::vector<std::string>& criterion_ids() {
  static const std::vector<std::string> ids = {"A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8"};
  return ids;
}

CriterionResult run_criterion(const std::string& id, const AcceptanceContext& ctx) {
  const auto t0 = std::chrono::steady_clock::now();
  CriterionResult r;
  // Each criterion gets its own stream so results do not depend on run order.
  std::mt19937_64 rng(ctx.seed * 131u + static_cast<unsigned char>(id.back()));
  try {
    if (id == "A1") r = a1();
    else if (id == "A2") r = a2();
    else if (id == "A3") r = a3();
    else if (id == "A4") r = a4(rng);
    else if (id == "A5") r = a5();
    else if (id == "A6") r = a6();
    else if (id == "A7") r = a7(ctx);
    else if (id == "A8") r = a8(rng);
    else throw Error(ErrorCode::InvalidConfig, "unknown criterion " + id);
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = e.what();
  }
  r.id = id;
  if (const auto it = titles().find(id); it != titles().end()) r.title = it->second;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::string format_result_line(const CriterionResult& r) {
  std::ostringstream o;
  o << (r.pass ? "PASS " : "FAIL ") << r.id << " " << r.title << " (";
  char buf[64];
  for (std::size_t k = 0; k < r.metrics.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.6g", r.metrics[k].second);
    o << (k ? ", " : "") << r.metrics[k].first << "=" << buf;
  }
  std::snprintf(buf, sizeof buf, "%.1f", r.seconds);
  o << (r.metrics.empty() ? "" : ", ") << "seconds=" << buf << ")";
  if (!r.detail.empty()) o << " " << r.detail;
  return o.str();
}

}  // namespace catron
