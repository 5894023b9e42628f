#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "catron/commands.hpp"
#include "catron/config.hpp"
#include "catron/error.hpp"

namespace {

struct GlobalFlags {
  std::string config_path;
  std::string out;
  int cutoff = -1;
  std::string grid;
  long long seed = -1;
};

catron::RunConfig resolve_config(const GlobalFlags& f) {
  catron::RunConfig cfg = f.config_path.empty() ? catron::parse_config_text("") : catron::load_config_file(f.config_path);
  catron::apply_env_overrides(cfg);
  if (!f.out.empty()) cfg.out_dir = f.out;
  if (f.cutoff >= 0) {
    cfg.params.fock_cutoff = f.cutoff;
    cfg.compare_fock_cutoff = f.cutoff;
  }
  if (!f.grid.empty()) catron::apply_grid_spec(cfg, f.grid);
  if (f.seed >= 0) cfg.seed = static_cast<std::uint64_t>(f.seed);
  cfg.params = catron::validate_params(cfg.params);
  return cfg;
}

void list(const std::vector<std::string>& files) {
  for (const auto& f : files) std::cout << "wrote " << f << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stationary Wigner functions, instantons and switching rates of the two-photon driven cavity"};
  app.require_subcommand(1);
  GlobalFlags flags;
  app.add_option("--config", flags.config_path, "key = value configuration file");
  app.add_option("--out", flags.out, "output directory");
  app.add_option("--cutoff", flags.cutoff, "Fock cutoff N");
  app.add_option("--grid", flags.grid, "grid spec N, NXxNP, optionally @xmin:xmax:pmin:pmax");
  app.add_option("--seed", flags.seed, "seed for randomized checks");

  auto* wigner = app.add_subcommand("wigner", "stationary Wigner function on the grid");
  std::string source = "exact";
  wigner->add_option("--source", source, "exact | wkb | potential | fock")
      ->check(CLI::IsMember({"exact", "wkb", "potential", "fock"}));

  auto* portrait = app.add_subcommand("phase-portrait", "flow field, fixed points, instanton and downhill path");

  auto* rate = app.add_subcommand("rate", "switching-rate exponent tables");
  std::string compare_fock;
  bool critical_zoom = false;
  auto* cf = rate->add_option("--compare-fock", compare_fock, "add Liouvillian block rates, optionally G=<value>")
                 ->expected(0, 1);
  rate->add_flag("--critical-zoom", critical_zoom, "near-critical power-law window");

  auto* instanton = app.add_subcommand("instanton", "instanton trajectory and action");
  auto* spectrum = app.add_subcommand("spectrum", "Liouvillian spectrum per parity block");

  auto* validate = app.add_subcommand("validate", "acceptance criteria with a JSON report");
  bool inject_fault = false;
  std::vector<std::string> only;
  validate->add_flag("--inject-fault", inject_fault, "corrupt the 1F1 evaluator to exercise the report");
  validate->add_option("--only", only, "restrict to these criteria (A1..A8)")->delimiter(',');

  CLI11_PARSE(app, argc, argv);

  catron::RunConfig cfg;
  try {
    cfg = resolve_config(flags);
  } catch (const catron::Error& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*wigner) {
      list(catron::cmd_wigner(cfg, catron::parse_wigner_source(source)));
    } else if (*portrait) {
      list(catron::cmd_phase_portrait(cfg));
    } else if (*rate) {
      const bool want_fock = cf->count() > 0;
      if (!compare_fock.empty()) {
        if (compare_fock.rfind("G=", 0) != 0) {
          std::cerr << "--compare-fock expects G=<value>\n";
          return 2;
        }
        catron::set_config_value(cfg, "compare_fock_G", compare_fock.substr(2));
      }
      list(catron::cmd_rate(cfg, want_fock, critical_zoom));
    } else if (*instanton) {
      list(catron::cmd_instanton(cfg));
    } else if (*spectrum) {
      list(catron::cmd_spectrum(cfg));
    } else if (*validate) {
      const catron::ValidateReport rep = catron::cmd_validate(cfg, inject_fault, only);
      std::cout << rep.json;
      return rep.all_pass ? 0 : 1;
    }
  } catch (const catron::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
