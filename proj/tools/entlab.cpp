#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "entlab/accept.hpp"
#include "entlab/errors.hpp"
#include "entlab/fermion_chain.hpp"
#include "entlab/kern.hpp"
#include "entlab/scan.hpp"

namespace {

using entlab::scan::Grid;
using entlab::scan::ScanConfig;
using entlab::scan::Table;

struct OutputOpts {
  std::string out_path;
  bool json = false;
};

void add_output_opts(CLI::App* cmd, OutputOpts& opts) {
  cmd->add_option("--out", opts.out_path, "CSV output path (stdout if absent)");
  cmd->add_flag("--json", opts.json, "also write a JSON mirror next to --out");
}

void emit(const Table& table, const ScanConfig& cfg, const OutputOpts& opts) {
  if (opts.out_path.empty()) {
    if (opts.json)
      entlab::scan::write_json(table, cfg, std::cout);
    else
      entlab::scan::write_csv(table, cfg, std::cout);
    return;
  }
  {
    std::ofstream f(opts.out_path);
    if (!f) throw std::invalid_argument("cannot open " + opts.out_path);
    entlab::scan::write_csv(table, cfg, f);
  }
  if (opts.json) {
    std::ofstream f(opts.out_path + ".json");
    if (!f)
      throw std::invalid_argument("cannot open " + opts.out_path + ".json");
    entlab::scan::write_json(table, cfg, f);
  }
  std::cout << "wrote " << opts.out_path
            << (opts.json ? " (+ .json mirror)" : "") << "\n";
}

int failed_rows(const Table& t) {
  int n = 0;
  for (const std::string& s : t.status)
    if (s != "ok") ++n;
  return n;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "entlab: ground-state entanglement entropy and zero-mode diagnostics "
      "for bosonic pairs, harmonic chains and the staggered Dirac chain"};
  app.require_subcommand(1);  // global flags may follow the subcommand
  app.set_config("--config", "", "read options from a key=value file");

  int workers = 0;
  unsigned seed = 0;
  double tol = 0.02;
  app.add_option("--workers", workers, "scan worker threads (0 = all cores)")
      ->capture_default_str();
  app.add_option("--seed", seed,
                 "reserved; current computations are deterministic")
      ->capture_default_str();
  app.add_option("--tol", tol, "relative tolerance for saturation detection")
      ->capture_default_str();

  // boson-pair path
  auto* bpair = app.add_subcommand("boson-pair", "coupled-pair operations");
  auto* bpath = bpair->add_subcommand(
      "path", "sweep tau along a degeneracy path and classify its limit");
  std::string kind = "II", base = "2,1,2,1", tau_grid = "lin:0:0.99:12";
  double pj = 1.0, pl = 1.0;
  OutputOpts bpath_out;
  bpath->add_option("--kind", kind, "I, II, III or custom")
      ->capture_default_str();
  bpath->add_option("--base", base, "j0,k0,l0,m0")->capture_default_str();
  bpath->add_option("--tau-grid", tau_grid, "grid: lin:a:b:n, log:a:b:n or list")
      ->capture_default_str();
  bpath->add_option("--pj", pj, "custom path exponent for j");
  bpath->add_option("--pl", pl, "custom path exponent for l");
  add_output_opts(bpath, bpath_out);

  // boson-chain scan
  auto* bchain = app.add_subcommand("boson-chain", "harmonic-chain operations");
  auto* bscan = bchain->add_subcommand("scan", "sweep mass or subsystem size");
  std::size_t chain_n = 40;
  std::string chain_sweep = "mass", chain_grid = "log:0.01:1:12";
  std::string subsystem = "1-10", boundary = "periodic";
  double chain_mass = 0.1, chain_a = 1.0;
  OutputOpts bscan_out;
  bscan->add_option("--n", chain_n, "chain sites")->capture_default_str();
  bscan->add_option("--sweep", chain_sweep, "mass or L")->capture_default_str();
  bscan->add_option("--mass-grid", chain_grid, "grid for the mass sweep")
      ->capture_default_str();
  bscan->add_option("--L-grid", chain_grid, "grid for the subsystem sweep");
  bscan->add_option("--subsystem", subsystem, "site range lo-hi or list (1-based)")
      ->capture_default_str();
  bscan->add_option("--boundary", boundary, "periodic or dirichlet")
      ->capture_default_str();
  bscan->add_option("--mass", chain_mass, "fixed mass for the L sweep")
      ->capture_default_str();
  bscan->add_option("--a", chain_a, "lattice spacing")->capture_default_str();
  add_output_opts(bscan, bscan_out);

  // fermion scan / asymptotic
  auto* ferm = app.add_subcommand("fermion", "staggered Dirac chain");
  auto* fscan = ferm->add_subcommand("scan", "sweep K or subsystem size L");
  std::string fsweep = "K", fgrid = "log:0.001:10:13";
  std::size_t fN = 4096, fL = 1;
  double fK = 0.0;
  OutputOpts fscan_out;
  fscan->add_option("--sweep", fsweep, "K or L")->capture_default_str();
  fscan->add_option("--grid", fgrid, "grid: lin:a:b:n, log:a:b:n or list")
      ->capture_default_str();
  fscan->add_option("--N", fN, "momentum points (thermodynamic proxy)")
      ->capture_default_str();
  fscan->add_option("--L", fL, "subsystem cells for the K sweep")
      ->capture_default_str();
  fscan->add_option("--K", fK, "fixed K = m*a for the L sweep")
      ->capture_default_str();
  add_output_opts(fscan, fscan_out);

  auto* fasym = ferm->add_subcommand(
      "asymptotic", "root geometry and small-K law of the entropy");
  std::string fasym_grid = "log:0.001:1:7";
  OutputOpts fasym_out;
  fasym->add_option("--K-grid", fasym_grid, "grid of K values")
      ->capture_default_str();
  add_output_opts(fasym, fasym_out);

  // fit
  auto* fit = app.add_subcommand("fit", "least-squares fit of S vs ln(x)");
  std::string fit_input, fit_xcol = "L", fit_ycol = "S", fit_window = "auto";
  fit->add_option("--input", fit_input, "CSV produced by a scan")->required();
  fit->add_option("--x-col", fit_xcol, "x column name")->capture_default_str();
  fit->add_option("--y-col", fit_ycol, "y column name")->capture_default_str();
  fit->add_option("--window", fit_window, "lo:hi row range (0-based) or auto")
      ->capture_default_str();

  // verify
  auto* verify =
      app.add_subcommand("verify", "run the acceptance suite (exit 3 on fail)");

  for (CLI::App* sub :
       {bpair, bpath, bchain, bscan, ferm, fscan, fasym, fit, verify})
    sub->fallthrough();  // global flags may follow the subcommand

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*verify) {
      std::cout << "kernels: " << entlab::kern::isa_name(entlab::kern::active_isa())
                << "\n";
      return entlab::accept::run_all(std::cout) ? 0 : 3;
    }

    if (*bpath) {
      ScanConfig cfg;
      cfg.model = entlab::scan::Model::BosonPair;
      cfg.sweep = entlab::scan::Sweep::Tau;
      cfg.grid = Grid::parse(tau_grid);
      cfg.fixed["kind"] = kind;
      cfg.fixed["base"] = base;
      if (kind == "custom") {
        cfg.fixed["pj"] = entlab::scan::detail::format_value(pj);
        cfg.fixed["pl"] = entlab::scan::detail::format_value(pl);
      }
      cfg.workers = workers;
      cfg.seed = seed;
      const Table t = entlab::scan::run_scan(cfg);
      emit(t, cfg, bpath_out);
      return failed_rows(t) == 0 ? 0 : 2;
    }

    if (*bscan) {
      ScanConfig cfg;
      cfg.model = entlab::scan::Model::BosonChain;
      cfg.sweep = chain_sweep == "L" ? entlab::scan::Sweep::SubsystemL
                                     : entlab::scan::Sweep::Mass;
      cfg.grid = Grid::parse(chain_grid);
      cfg.fixed["n"] = std::to_string(chain_n);
      cfg.fixed["a"] = entlab::scan::detail::format_value(chain_a);
      cfg.fixed["boundary"] = boundary;
      cfg.fixed["subsystem"] = subsystem;
      cfg.fixed["mass"] = entlab::scan::detail::format_value(chain_mass);
      cfg.workers = workers;
      cfg.seed = seed;
      const Table t = entlab::scan::run_scan(cfg);
      emit(t, cfg, bscan_out);
      return failed_rows(t) == 0 ? 0 : 2;
    }

    if (*fscan) {
      ScanConfig cfg;
      cfg.model = entlab::scan::Model::Fermion;
      cfg.sweep = fsweep == "L" ? entlab::scan::Sweep::SubsystemL
                                : entlab::scan::Sweep::K;
      cfg.grid = Grid::parse(fgrid);
      cfg.fixed["N"] = std::to_string(fN);
      cfg.fixed["L"] = std::to_string(fL);
      cfg.fixed["K"] = entlab::scan::detail::format_value(fK);
      cfg.workers = workers;
      cfg.seed = seed;
      cfg.saturation_tol = tol;
      const Table t = entlab::scan::run_scan(cfg);
      emit(t, cfg, fscan_out);
      return failed_rows(t) == 0 ? 0 : 2;
    }

    if (*fasym) {
      ScanConfig cfg;
      cfg.model = entlab::scan::Model::Fermion;
      cfg.sweep = entlab::scan::Sweep::K;
      cfg.grid = Grid::parse(fasym_grid);
      Table t;
      t.columns = {"K", "zeta_plus", "zeta_minus", "S_estimate", "small_K_law"};
      for (double k : cfg.grid.values) {
        const entlab::fermion::AsymptoticEstimate est =
            entlab::fermion::asymptotic_entropy(k);
        t.rows.push_back({k, est.zeta_plus.real(), est.zeta_minus.real(),
                          est.s_estimate, est.small_k_law});
        t.status.push_back("ok");
      }
      emit(t, cfg, fasym_out);
      return 0;
    }

    if (*fit) {
      std::ifstream f(fit_input);
      if (!f) throw std::invalid_argument("cannot open " + fit_input);
      const Table t = entlab::scan::read_csv(f);
      std::optional<std::pair<std::size_t, std::size_t>> window;
      if (fit_window != "auto") {
        const auto colon = fit_window.find(':');
        if (colon == std::string::npos)
          throw std::invalid_argument("--window must be lo:hi or auto");
        window = std::make_pair(std::stoul(fit_window.substr(0, colon)),
                                std::stoul(fit_window.substr(colon + 1)));
      }
      const entlab::scan::FitResult r =
          entlab::scan::fit_log(t, fit_xcol, fit_ycol, window);
      std::cout << "A=" << entlab::scan::detail::format_value(r.a)
                << " B=" << entlab::scan::detail::format_value(r.b)
                << " residual_rms="
                << entlab::scan::detail::format_value(r.residual_rms)
                << " window=[" << r.window_lo << "," << r.window_hi << ")\n";
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const entlab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
