#include "catron/commands.hpp"

#include <cmath>
#include <numbers>

#include "catron/acceptance.hpp"
#include "catron/analytic.hpp"
#include "catron/error.hpp"
#include "catron/fock.hpp"
#include "catron/instanton.hpp"
#include "catron/io.hpp"
#include "catron/specfun.hpp"
#include "json.hpp"

namespace catron {

namespace {

using json = nlohmann::ordered_json;

std::string prepare(const RunConfig& cfg, std::vector<std::string>& written) {
  ensure_directory(cfg.out_dir);
  const std::string path = cfg.out_dir + "/run_config.txt";
  write_text(path, cfg.to_text());
  written.push_back(path);
  return cfg.out_dir + "/";
}

json meta_json(const RunConfig& cfg, const std::string& command) {
  json m;
  m["build"] = build_id();
  m["command"] = command;
  m["config"] = cfg.to_text();
  return m;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json polyline_json(const std::vector<Quadratures>& line) {
  json a = json::array();
  for (const auto& q : line) a.push_back({q.x, q.p});
  return a;
}

}  // namespace

WignerSource parse_wigner_source(const std::string& name) {
  if (name == "exact") return WignerSource::Exact;
  if (name == "wkb") return WignerSource::Wkb;
  if (name == "potential") return WignerSource::Potential;
  if (name == "fock") return WignerSource::Fock;
  throw Error(ErrorCode::InvalidConfig, "unknown Wigner source '" + name + "'");
}

std::string to_string(WignerSource s) {
  switch (s) {
    case WignerSource::Exact: return "exact";
    case WignerSource::Wkb: return "wkb";
    case WignerSource::Potential: return "potential";
    case WignerSource::Fock: return "fock";
  }
  return "exact";
}

std::vector<std::string> cmd_wigner(const RunConfig& cfg, WignerSource source) {
  std::vector<std::string> out;
  const std::string dir = prepare(cfg, out);
  const ModelParams& p = cfg.params;
  const PhaseGrid grid = make_grid(cfg.bounds, cfg.nx, cfg.np);
  const std::string name = to_string(source);
  const std::string command = "wigner --source " + name;

  WignerGrid w;
  std::vector<double> neg_log;
  std::vector<std::string> extra;
  if (source == WignerSource::Fock) {
    const Superoperator S = build_liouvillian(p, static_cast<std::size_t>(p.fock_cutoff));
    const SteadyStateBasis basis = steady_states(S);
    // Photon-number parity is conserved, so the steady state is a mixture of the
    // diagonal-block representatives with weights set by the initial parity.
    // Pick the weights that reproduce the analytic map, then fix the trace.
    const WignerGrid target = wigner_exact(grid, p);
    const auto M = static_cast<Eigen::Index>(grid.size());
    const auto nb = static_cast<Eigen::Index>(basis.physical.size());
    Eigen::MatrixXd A(M, nb);
    for (Eigen::Index b = 0; b < nb; ++b) {
      const WignerGrid wb = wigner_from_density(basis.physical[static_cast<std::size_t>(b)], grid);
      A.col(b) = Eigen::Map<const Eigen::VectorXd>(wb.values.data(), M);
    }
    Eigen::VectorXd c = A.colPivHouseholderQr().solve(Eigen::Map<const Eigen::VectorXd>(target.values.data(), M));
    c /= c.sum();
    Matrix rho = Matrix::Zero(static_cast<Eigen::Index>(S.N), static_cast<Eigen::Index>(S.N));
    for (Eigen::Index b = 0; b < nb; ++b) {
      const DensityMatrix& d = basis.physical[static_cast<std::size_t>(b)];
      rho += c(b) * d.rho;
      double even = 0.0;
      for (Eigen::Index n = 0; n < d.rho.rows(); n += 2) even += d.rho(n, n).real();
      char buf[96];
      std::snprintf(buf, sizeof buf, "weight_%s_%lld = %.12g", even > 0.5 ? "even" : "odd", static_cast<long long>(b), c(b));
      extra.push_back(buf);
    }
    w = wigner_from_density(DensityMatrix{rho}, grid);
    neg_log.resize(w.values.size());
    for (std::size_t k = 0; k < w.values.size(); ++k) {
      neg_log[k] = w.values[k] > 0.0 ? -std::log(w.values[k]) : std::numeric_limits<double>::quiet_NaN();
    }
    extra.push_back("kernel_dim = " + std::to_string(basis.kernel.size()));
  } else {
    const LogWignerGrid exact = neg_log_wigner_exact(grid, p);
    LogWignerGrid lg;
    if (source == WignerSource::Exact) {
      lg = exact;
    } else if (source == WignerSource::Wkb) {
      lg = neg_log_wigner_wkb(grid, p, exact.ln_norm);
    } else {
      lg = neg_log_wigner_potential(grid, p, exact.ln_norm);
    }
    w = to_wigner(lg);
    neg_log = lg.neg_log_w;
    for (std::size_t k = 0; k < neg_log.size(); ++k) {
      if (!lg.valid[k]) neg_log[k] = std::numeric_limits<double>::quiet_NaN();
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "ln_norm = %.17g", exact.ln_norm);
    extra.push_back(buf);
  }
  const auto header = metadata_header(cfg, command, extra);
  write_csv(dir + "wigner_" + name + ".csv", header, grid_table(grid, w.values, "W"));
  write_csv(dir + "neg_log_wigner_" + name + ".csv", header, grid_table(grid, neg_log, "neg_log_W"));
  out.push_back(dir + "wigner_" + name + ".csv");
  out.push_back(dir + "neg_log_wigner_" + name + ".csv");

  if (source == WignerSource::Potential) {
    json j;
    j["meta"] = meta_json(cfg, command);
    j["branch_cuts"] = json::array();
    for (const auto& line : branch_cut_polylines(grid, p)) j["branch_cuts"].push_back(polyline_json(line));
    write_text(dir + "branch_cuts.json", dump(j));
    out.push_back(dir + "branch_cuts.json");
  }
  if (source == WignerSource::Wkb) {
    CsvTable t;
    t.columns = {"x", "p"};
    for (const auto& q : switching_line(grid, p)) t.rows.push_back({q.x, q.p});
    write_csv(dir + "switching_line.csv", header, t);
    out.push_back(dir + "switching_line.csv");
  }
  return out;
}

std::vector<std::string> cmd_phase_portrait(const RunConfig& cfg) {
  std::vector<std::string> out;
  const std::string dir = prepare(cfg, out);
  const ModelParams& p = cfg.params;
  const FixedPoints fp = fixed_points(p);
  const auto header = metadata_header(cfg, "phase-portrait");

  CsvTable field;
  field.columns = {"x", "p", "dx", "dp"};
  const std::size_t n = std::max<std::size_t>(cfg.portrait_n, 2);
  const GridBounds& b = cfg.bounds;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double x = b.x_min + (b.x_max - b.x_min) * static_cast<double>(i) / static_cast<double>(n - 1);
      const double q = b.p_min + (b.p_max - b.p_min) * static_cast<double>(j) / static_cast<double>(n - 1);
      const Quadratures d = xy_of_alpha(semiclassical_flow(alpha_of_xy(x, q), p));
      field.rows.push_back({x, q, d.x, d.p});
    }
  }
  write_csv(dir + "flow_field.csv", header, field);

  CsvTable fixed;
  fixed.columns = {"kind", "x", "p"};  // kind: 0 saddle, 1 attractor
  const Quadratures qp = xy_of_alpha(fp.alpha0);
  fixed.rows = {{0.0, 0.0, 0.0}, {1.0, qp.x, qp.p}, {1.0, -qp.x, -qp.p}};
  write_csv(dir + "fixed_points.csv", header, fixed);

  const InstantonTrajectory up = integrate_instanton(p, Attractor::Plus);
  CsvTable upt;
  upt.columns = {"t", "x", "p"};
  for (const auto& s : up.samples) {
    const Quadratures q = xy_of_alpha(s.point.alpha);
    upt.rows.push_back({s.t, q.x, q.p});
  }
  write_csv(dir + "instanton_uphill.csv", header, upt);

  const DownhillPath down = downhill_path(p, Attractor::Minus);
  CsvTable dnt;
  dnt.columns = {"t", "x", "p"};
  for (const auto& [t, a] : down.samples) {
    const Quadratures q = xy_of_alpha(a);
    dnt.rows.push_back({t, q.x, q.p});
  }
  write_csv(dir + "downhill.csv", header, dnt);

  json j;
  j["meta"] = meta_json(cfg, "phase-portrait");
  j["layers"] = {{"flow_field", "flow_field.csv"},
                 {"fixed_points", "fixed_points.csv"},
                 {"instanton_uphill", "instanton_uphill.csv"},
                 {"downhill", "downhill.csv"}};
  j["alpha0"] = {fp.alpha0.real(), fp.alpha0.imag()};
  j["instanton_action"] = instanton_action(up, p).value;
  write_text(dir + "phase_portrait.json", dump(j));
  for (const char* f : {"flow_field.csv", "fixed_points.csv", "instanton_uphill.csv", "downhill.csv",
                        "phase_portrait.json"}) {
    out.push_back(dir + f);
  }
  return out;
}

std::vector<std::string> cmd_rate(const RunConfig& cfg, bool compare_fock, bool critical_zoom) {
  std::vector<std::string> out;
  const std::string dir = prepare(cfg, out);
  const double eta = cfg.params.eta;
  const auto header = metadata_header(cfg, std::string("rate") + (compare_fock ? " --compare-fock" : "") +
                                               (critical_zoom ? " --critical-zoom" : ""));

  CsvTable t;
  t.columns = {"G", "Delta", "eta", "ln_rate", "ln_rate_critical"};
  for (const auto& row : rate_sweep(cfg.rate_G, cfg.rate_points, eta)) {
    t.rows.push_back({row.G, row.Delta, row.eta, row.ln_rate, row.ln_rate_critical});
  }
  write_csv(dir + "rates.csv", header, t);
  out.push_back(dir + "rates.csv");

  if (critical_zoom) {
    CsvTable z;
    z.columns = {"G", "G_minus_Delta", "relative_distance", "ln_rate", "ln_rate_critical"};
    for (const double G : cfg.rate_G) {
      for (int k = 0; k <= 40; ++k) {
        const double rel = std::pow(10.0, -4.0 + 2.0 * k / 40.0);
        const ModelParams p = make_params(G, G * (1.0 - rel), eta);
        z.rows.push_back({G, G * rel, rel, ln_rate_closed_form(p).ln_rate, ln_rate_critical(p)});
      }
    }
    write_csv(dir + "rate_critical.csv", header, z);
    out.push_back(dir + "rate_critical.csv");
  }
  if (compare_fock) {
    CsvTable c;
    c.columns = {"G", "Delta", "eta", "cutoff", "ln_gap_ee", "ln_gap_oo", "ln_gap_eo", "ln_gap_oe", "ln_rate"};
    const double G = cfg.compare_fock_G;
    const auto N = static_cast<std::size_t>(cfg.compare_fock_cutoff);
    for (int k = 1; k <= 6; ++k) {
      const ModelParams p = make_params(G, G * k / 8.0, eta);
      const auto blocks = parity_project(build_liouvillian(p, N));
      std::vector<double> row{G, p.Delta, eta, static_cast<double>(N)};
      for (const auto& b : blocks) row.push_back(std::log(decay_rate(block_spectrum(b))));
      row.push_back(ln_rate_closed_form(p).ln_rate);
      c.rows.push_back(row);
    }
    write_csv(dir + "rate_compare_fock.csv", header, c);
    out.push_back(dir + "rate_compare_fock.csv");
  }
  return out;
}

std::vector<std::string> cmd_instanton(const RunConfig& cfg) {
  std::vector<std::string> out;
  const std::string dir = prepare(cfg, out);
  const ModelParams& p = cfg.params;
  const InstantonTrajectory traj = integrate_instanton(p, Attractor::Plus);
  const ActionResult act = instanton_action(traj, p);
  const RateResult rate = ln_rate_closed_form(p);
  char buf[3][96];
  std::snprintf(buf[0], sizeof buf[0], "action = %.17g", act.value);
  std::snprintf(buf[1], sizeof buf[1], "action_imag_residue = %.3g", act.imag_residue);
  std::snprintf(buf[2], sizeof buf[2], "ln_rate_closed_form = %.17g", rate.ln_rate);
  const auto header = metadata_header(cfg, "instanton", {buf[0], buf[1], buf[2]});
  CsvTable t;
  t.columns = {"t", "re_alpha", "im_alpha", "re_chi", "im_chi", "abs_L", "action"};
  for (const auto& s : traj.samples) {
    t.rows.push_back({s.t, s.point.alpha.real(), s.point.alpha.imag(), s.point.chi.real(), s.point.chi.imag(),
                      std::abs(s.point.L_value), s.action.real()});
  }
  write_csv(dir + "instanton.csv", header, t);
  out.push_back(dir + "instanton.csv");
  return out;
}

std::vector<std::string> cmd_spectrum(const RunConfig& cfg) {
  std::vector<std::string> out;
  const std::string dir = prepare(cfg, out);
  const ModelParams& p = cfg.params;
  const auto N = static_cast<std::size_t>(p.fock_cutoff);
  const Superoperator S = build_liouvillian(p, N);
  const auto blocks = parity_project(S);
  CsvTable t;
  t.columns = {"block", "re_lambda", "im_lambda"};
  json j;
  j["meta"] = meta_json(cfg, "spectrum");
  j["block_index"] = {"ee", "oo", "eo", "oe"};
  j["blocks"] = json::array();
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const BlockSpectrum s = block_spectrum(blocks[b]);
    std::vector<std::pair<double, double>> ev;
    for (Eigen::Index k = 0; k < s.eigenvalues.size(); ++k) ev.push_back({s.eigenvalues(k).real(), s.eigenvalues(k).imag()});
    // Sorted so the file does not depend on the eigensolver's ordering.
    std::sort(ev.begin(), ev.end(), [](const auto& a, const auto& c) { return a.first != c.first ? a.first > c.first : a.second < c.second; });
    for (const auto& [re, im] : ev) t.rows.push_back({static_cast<double>(b), re, im});
    json jb;
    jb["block"] = std::string(to_string(blocks[b].which));
    jb["size"] = static_cast<std::size_t>(s.eigenvalues.size());
    try {
      jb["decay_rate"] = decay_rate(s);
    } catch (const Error&) {
      jb["decay_rate"] = nullptr;
    }
    j["blocks"].push_back(jb);
  }
  j["off_block_norm"] = off_block_norm(S);
  write_csv(dir + "spectrum.csv", metadata_header(cfg, "spectrum"), t);
  write_text(dir + "spectrum.json", dump(j));
  out.push_back(dir + "spectrum.csv");
  out.push_back(dir + "spectrum.json");
  return out;
}

ValidateReport cmd_validate(const RunConfig& cfg, bool inject_fault, const std::vector<std::string>& only) {
  ensure_directory(cfg.out_dir);
  AcceptanceContext ctx;
  ctx.seed = cfg.seed;
  ctx.scratch_dir = cfg.out_dir + "/validate_scratch";
  struct FaultGuard {
    bool on;
    explicit FaultGuard(bool b) : on(b) { if (on) set_kummer_fault_injection(true); }
    ~FaultGuard() { if (on) set_kummer_fault_injection(false); }
  } guard(inject_fault);

  json j;
  j["meta"] = meta_json(cfg, "validate");
  j["fault_injected"] = inject_fault;
  j["criteria"] = json::array();
  bool all = true;
  for (const auto& id : criterion_ids()) {
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    const CriterionResult r = run_criterion(id, ctx);
    all &= r.pass;
    json c;
    c["id"] = r.id;
    c["title"] = r.title;
    c["pass"] = r.pass;
    c["seconds"] = r.seconds;
    json m = json::object();
    for (const auto& [k, v] : r.metrics) m[k] = std::isfinite(v) ? json(v) : json(nullptr);
    c["metrics"] = m;
    c["detail"] = r.detail;
    j["criteria"].push_back(c);
  }
  j["all_pass"] = all;
  std::vector<std::string> failed;
  for (const auto& c : j["criteria"]) {
    if (!c["pass"].get<bool>()) failed.push_back(c["id"].get<std::string>());
  }
  j["failed"] = failed;
  ValidateReport rep{dump(j), all};
  write_text(cfg.out_dir + "/validate_report.json", rep.json);
  return rep;
}

}  // namespace catron
