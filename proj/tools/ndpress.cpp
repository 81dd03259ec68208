#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nds/checks.hpp"
#include "nds/config.hpp"
#include "nds/csv.hpp"
#include "nds/errors.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct CommonFlags {
  std::string system_file;
  std::string potential_file;
  std::string measure_file;
  std::vector<double> eps;
  int nmax = 0;
  double tol = 0.0;
  std::int64_t seed = 1;
  std::string out_dir = "results";
};

void add_common(CLI::App* cmd, CommonFlags& fl, bool need_system) {
  auto* sys = cmd->add_option("--system", fl.system_file, "system config file");
  if (need_system) sys->required();
  cmd->add_option("--potential", fl.potential_file, "potential config file");
  cmd->add_option("--measure", fl.measure_file, "measure config file");
  cmd->add_option("--eps", fl.eps, "radius schedule, largest first")
      ->delimiter(',');
  cmd->add_option("--nmax", fl.nmax, "maximum Bowen ball depth");
  cmd->add_option("--tol", fl.tol, "tolerance override");
  cmd->add_option("--seed", fl.seed, "random seed");
  cmd->add_option("--out", fl.out_dir, "output directory");
}

nds::EstimatorConfig make_config(const CommonFlags& fl,
                                 const nds::LoadedSystem& loaded) {
  nds::EstimatorConfig cfg = nds::estimator_from(loaded.config, *loaded.system);
  if (!fl.eps.empty()) cfg.eps_schedule = fl.eps;
  if (fl.nmax > 0) cfg.n_max = fl.nmax;
  if (fl.tol > 0.0) cfg.plateau_tol = fl.tol;
  cfg.seed = std::uint64_t(fl.seed);
  return cfg;
}

nds::PotentialSeq make_potential(const CommonFlags& fl) {
  if (fl.potential_file.empty()) return nds::zero_potential();
  return nds::load_potential(fl.potential_file);
}

void write_outputs(const std::string& dir, const std::string& stem,
                   const std::vector<nds::CsvRow>& rows,
                   const std::vector<std::string>& summary) {
  std::filesystem::create_directories(dir);
  nds::csv_write((std::filesystem::path(dir) / (stem + ".csv")).string(),
                 rows);
  std::ofstream txt(std::filesystem::path(dir) / (stem + ".txt"));
  for (const auto& line : summary) {
    txt << line << '\n';
    std::cout << line << '\n';
  }
}

nds::CsvRow estimate_row(const nds::LoadedSystem& loaded,
                         const nds::PotentialSeq& f,
                         const std::string& quantity,
                         const nds::EstimatorConfig& cfg) {
  auto t0 = Clock::now();
  nds::CsvRow row;
  row.instance = loaded.name;
  row.quantity = quantity;
  row.N = cfg.n_min;
  row.n_max = cfg.n_max;

  bool packing = quantity.rfind("packing", 0) == 0;
  nds::PressureEstimate est =
      packing ? nds::packing_pressure(*loaded.system, f, nds::full_target(), cfg)
              : nds::bowen_pressure(*loaded.system, f, nds::full_target(), cfg);
  const nds::EpsDiag& last = est.per_eps.back();
  row.eps = last.eps;
  row.s_star = last.s_star_raw;
  row.value = est.value;
  row.lower = est.value - est.grid_slack;
  row.upper = est.value + est.grid_slack;
  row.pass = est.plateau;
  row.runtime_ms = ms_since(t0);
  return row;
}

nds::CsvRow measure_row(const nds::LoadedSystem& loaded,
                        const nds::PotentialSeq& f, const nds::MeasureRep& mu,
                        const std::string& quantity,
                        const nds::EstimatorConfig& cfg) {
  auto t0 = Clock::now();
  nds::CsvRow row;
  row.instance = loaded.name + "/" + mu.label;
  row.quantity = quantity;
  row.N = cfg.n_min;
  row.n_max = cfg.n_max;
  row.eps = cfg.eps_schedule.back();

  nds::Side side = quantity == "measure-upper" ? nds::Side::Upper
                                               : nds::Side::Lower;
  auto ie = nds::integrated_exponent(mu, *loaded.system, f, 0, cfg, side);
  row.s_star = ie.value;
  row.value = ie.value;
  row.lower = ie.value - 2.0 * ie.std_error;
  row.upper = ie.value + 2.0 * ie.std_error;
  row.pass = ie.excluded_fraction < 0.5;
  row.runtime_ms = ms_since(t0);
  return row;
}

int cmd_estimate(const CommonFlags& fl, const std::string& quantity) {
  nds::LoadedSystem loaded = nds::load_system(fl.system_file);
  nds::EstimatorConfig cfg = make_config(fl, loaded);
  nds::PotentialSeq f = make_potential(fl);

  std::vector<nds::CsvRow> rows;
  if (quantity == "measure-lower" || quantity == "measure-upper") {
    if (fl.measure_file.empty())
      throw nds::ConfigError("--measure is required for measure quantities");
    nds::MeasureRep mu = nds::load_measure(*loaded.system, fl.measure_file);
    rows.push_back(measure_row(loaded, f, mu, quantity, cfg));
  } else {
    rows.push_back(estimate_row(loaded, f, quantity, cfg));
  }

  std::vector<std::string> summary;
  for (const auto& r : rows) {
    summary.push_back(r.instance + " " + r.quantity + " = " +
                      std::to_string(r.value) + "  [" +
                      std::to_string(r.lower) + ", " +
                      std::to_string(r.upper) + "]" +
                      (r.pass ? "" : "  (no radius plateau; refine eps)"));
  }
  write_outputs(fl.out_dir, "estimate_" + loaded.name, rows, summary);
  bool all = true;
  for (const auto& r : rows) all = all && r.pass;
  return all ? 0 : 1;
}

int cmd_verify(const CommonFlags& fl, const std::string& suite) {
  nds::SuiteOptions opts;
  opts.seed = std::uint64_t(fl.seed);
  if (fl.tol > 0.0) opts.grid_tol = fl.tol;

  std::vector<std::string> suites;
  if (suite == "all")
    suites = nds::suite_names();
  else
    suites.push_back(suite);

  bool all_pass = true;
  std::filesystem::create_directories(fl.out_dir);
  for (const auto& name : suites) {
    auto t0 = Clock::now();
    std::vector<nds::CheckReport> reports = nds::run_suite(name, opts);
    double elapsed = ms_since(t0);

    std::vector<nds::CsvRow> rows;
    std::vector<std::string> summary;
    int failed = 0;
    for (const auto& r : reports) {
      nds::CsvRow row;
      row.instance = r.instance;
      row.quantity = r.name;
      row.s_star = r.tol;
      row.value = r.lhs;
      row.lower = r.rhs_lo;
      row.upper = r.rhs_hi;
      row.pass = r.pass;
      row.runtime_ms = elapsed / double(reports.size());
      rows.push_back(std::move(row));
      summary.push_back(nds::to_line(r));
      if (!r.pass && r.informative) ++failed;
    }
    summary.push_back("suite " + name + ": " +
                      std::to_string(reports.size() - size_t(failed)) + "/" +
                      std::to_string(reports.size()) + " checks passed");
    write_outputs(fl.out_dir, "verify_" + name, rows, summary);
    if (failed > 0) all_pass = false;
  }
  return all_pass ? 0 : 1;
}

int cmd_sweep(const CommonFlags& fl) {
  nds::LoadedSystem loaded = nds::load_system(fl.system_file);
  nds::EstimatorConfig base = make_config(fl, loaded);
  nds::PotentialSeq f = make_potential(fl);

  std::vector<nds::CsvRow> rows;
  std::vector<std::string> summary;
  bool all = true;
  for (double eps : base.eps_schedule) {
    for (bool packing : {false, true}) {
      nds::EstimatorConfig cfg = base;
      cfg.eps_schedule = {eps};
      nds::CsvRow row = estimate_row(
          loaded, f, packing ? "packing-pressure" : "bowen-pressure", cfg);
      summary.push_back("eps=" + std::to_string(eps) + " " + row.quantity +
                        " s* = " + std::to_string(row.value));
      all = all && row.pass;
      rows.push_back(std::move(row));
    }
  }
  write_outputs(fl.out_dir, "sweep_" + loaded.name, rows, summary);
  return all ? 0 : 1;
}

int cmd_define(const CommonFlags& fl) {
  auto names = nds::write_zoo_configs(fl.out_dir);
  for (const auto& n : names) std::cout << fl.out_dir << "/" << n << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entropy and pressure estimators for nonautonomous systems"};
  app.require_subcommand(1);

  CommonFlags fl_est, fl_ver, fl_swp, fl_def;
  std::string quantity = "bowen-entropy";
  std::string suite = "all";

  CLI::App* est = app.add_subcommand("estimate", "estimate one quantity");
  add_common(est, fl_est, true);
  est->add_option("--quantity", quantity, "what to estimate")
      ->check(CLI::IsMember({"bowen-entropy", "packing-entropy",
                             "bowen-pressure", "packing-pressure",
                             "measure-lower", "measure-upper"}));

  CLI::App* ver = app.add_subcommand("verify", "run a check suite");
  add_common(ver, fl_ver, false);
  std::vector<std::string> suite_choices = nds::suite_names();
  suite_choices.push_back("all");
  ver->add_option("--suite", suite, "suite name or 'all'")
      ->check(CLI::IsMember(suite_choices));

  CLI::App* swp = app.add_subcommand("sweep", "per-radius critical exponents");
  add_common(swp, fl_swp, true);

  CLI::App* def = app.add_subcommand("define", "write canonical configs");
  add_common(def, fl_def, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (est->parsed()) {
      if (quantity.rfind("entropy") != std::string::npos &&
          !fl_est.potential_file.empty()) {
        nds::PotentialSeq f = nds::load_potential(fl_est.potential_file);
        if (f.name != "zero")
          throw nds::ConfigError(
              "entropy quantities take no potential; use *-pressure");
      }
      return cmd_estimate(fl_est, quantity);
    }
    if (ver->parsed()) return cmd_verify(fl_ver, suite);
    if (swp->parsed()) return cmd_sweep(fl_swp);
    if (def->parsed()) return cmd_define(fl_def);
  } catch (const nds::InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return 3;
  } catch (const nds::BracketError& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return 3;
  } catch (const nds::DegenerateError& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return 3;
  } catch (const nds::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const nds::UnsupportedError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const nds::LevelRangeError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
