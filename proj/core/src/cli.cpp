// Copyright 2026 The Relent Authors
// SPDX-License-Identifier: Apache-2.0

#include "relent/cli.hpp"

#include <cstdlib>
#include <iostream>
#include <numbers>
#include <optional>

#include "CLI11.hpp"

#include "relent/io.hpp"

namespace relent {

namespace {

double default_tolerance() {
  const char* env = std::getenv("RELENT_TOL");
  if (env == nullptr || *env == '\0') return kDefaultTol;
  char* end = nullptr;
  const double value = std::strtod(env, &end);
  if (end == env || *end != '\0' || !(value > 0.0)) {
    throw validation_error("RELENT_TOL must be a positive number, got '" +
                           std::string(env) + "'");
  }
  return value;
}

void run_analyze(const std::string& state_path, const std::string& setup_path,
                 bool mixed, double tol, const std::string& out_path) {
  const LoadedState loaded = load_state(state_path, tol);
  const MeasurementSetup setup = load_setup(setup_path, loaded.statistics, tol);
  if (setup.local_dim != loaded.state.local_dim) {
    throw validation_error(
        "setup ambient dimension " + std::to_string(setup.local_dim) +
        " does not match state dimension " +
        std::to_string(loaded.state.local_dim));
  }
  if (setup.num_particles != loaded.state.num_particles) {
    throw validation_error(
        "setup covers " + std::to_string(setup.num_particles) +
        " particles but the state has " +
        std::to_string(loaded.state.num_particles));
  }
  const MeasurableSpace space(setup, tol);
  const EntanglementReport report =
      separability_verdict(loaded.state, space, false, tol);
  std::optional<MixedReport> mixed_report;
  if (mixed) {
    const ComplexMatrix rho =
        loaded.state.amplitudes * loaded.state.amplitudes.adjoint();
    mixed_report = mixed_state_report(rho, space, tol);
  }
  const std::string text = report_json(report, setup, mixed_report);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    write_text_file(out_path, text);
    std::cout << "verdict: " << to_string(report.verdict)
              << "  weight: " << report.weight << "\n";
  }
}

void run_fermion_sweep(int grid_points, const std::string& out_path) {
  if (grid_points < 2) {
    throw validation_error("--grid must be at least 2 points");
  }
  std::vector<double> grid;
  if (grid_points == 721) {
    grid = default_theta_grid();
  } else {
    grid.resize(grid_points);
    for (int k = 0; k < grid_points; ++k) {
      grid[k] = static_cast<double>(k) * std::numbers::pi /
                static_cast<double>(grid_points - 1);
    }
  }
  const std::vector<SweepRow> rows = fermion_sweep(grid);
  write_sweep_csv(out_path, rows);
  std::cout << "wrote " << rows.size() << " rows to " << out_path << "\n";
}

void run_boson_cloud(long long samples, std::uint64_t seed,
                     const std::string& out_path) {
  const CloudResult result = boson_cloud(samples, seed);
  write_cloud_csv(out_path, result);
  std::cout << "wrote " << result.rows.size() << " rows to " << out_path
            << " (skipped " << result.skipped << " zero-weight draws)\n";
}

void run_iid_scan(int num_particles, int local_dim, long long trials,
                  long long setups, std::uint64_t seed) {
  const IidScanReport report =
      iid_scan(num_particles, local_dim, trials, setups, seed);
  std::cout << "cases: " << report.cases
            << "  separable: " << report.separable_cases
            << "  filtered: " << report.filtered_cases
            << "  violations: " << report.violations.size() << "\n";
  std::cout << "max secondary Schmidt coefficient: "
            << format_csv_double(report.max_second_schmidt) << "\n";
  for (const ScanViolation& v : report.violations) {
    std::cout << "violation at trial " << v.trial << " setup " << v.setup_index
              << " (stream " << v.stream << ")\n";
  }
}

void run_converse_scan(const std::string& state_path, long long trials,
                       std::uint64_t seed, const std::string& out_path,
                       double tol) {
  const LoadedState loaded = load_state(state_path, tol);
  if (loaded.statistics != Statistics::Boson) {
    throw validation_error("converse-scan expects a bosonic state document");
  }
  const ConverseScanReport report =
      converse_scan(loaded.state, trials, seed);
  if (report.witness_found) {
    std::cout << "witness found after " << report.trials_used
              << " trial(s): squared concurrence "
              << format_csv_double(report.witness_concurrence) << " (stream "
              << report.stream << ")\n";
    if (!out_path.empty()) {
      write_text_file(out_path, write_setup_json(*report.witness));
      std::cout << "witness setup written to " << out_path << "\n";
    }
  } else {
    std::cout << "no witness found in budget (" << report.trials_used
              << " trials)\n";
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"Entanglement of identical particles relative to a measurement setup"};
  app.require_subcommand(1);

  std::string state_path, setup_path, out_path;
  bool mixed = false;
  double tol = kDefaultTol;
  int grid_points = 721;
  long long samples = 10000;
  long long trials = 200;
  long long setups = 20;
  long long converse_trials = 1000;
  int num_particles = 2;
  int local_dim = 4;
  std::uint64_t seed = 1;

  CLI::App* analyze = app.add_subcommand(
      "analyze", "Classify a state against a measurement setup");
  analyze->add_option("--state", state_path, "state JSON document")->required();
  analyze->add_option("--setup", setup_path, "setup JSON document")->required();
  analyze->add_flag("--mixed", mixed,
                    "also run the partial-transpose test on the compressed "
                    "density matrix");
  analyze->add_option("--tol", tol, "numerical tolerance override");
  analyze->add_option("--out", out_path,
                      "report destination (stdout when omitted)");

  CLI::App* sweep = app.add_subcommand(
      "fermion-sweep",
      "Concurrence of the rotated-subspace two-fermion family");
  sweep->add_option("--grid", grid_points, "number of grid points on [0, pi]");
  sweep->add_option("--out", out_path, "output CSV path")->required();

  CLI::App* cloud = app.add_subcommand(
      "boson-cloud",
      "Schmidt coefficients of the two-boson state against random subspaces");
  cloud->add_option("--samples", samples, "number of random subspace draws");
  cloud->add_option("--seed", seed, "random seed");
  cloud->add_option("--out", out_path, "output CSV path")->required();

  CLI::App* iid = app.add_subcommand(
      "iid-scan",
      "Verify that i.i.d. boson states are separable for random setups");
  iid->add_option("--N", num_particles, "particle count")->required();
  iid->add_option("--dim", local_dim, "single-particle dimension")->required();
  iid->add_option("--trials", trials, "number of random states");
  iid->add_option("--setups", setups, "setups per state");
  iid->add_option("--seed", seed, "random seed");

  CLI::App* converse = app.add_subcommand(
      "converse-scan",
      "Search random two-block setups for an entanglement witness");
  converse->add_option("--state", state_path, "state JSON document")->required();
  converse->add_option("--trials", converse_trials, "trial budget");
  converse->add_option("--seed", seed, "random seed");
  converse->add_option("--out", out_path,
                       "write the witnessing setup document here");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("relent");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    const bool tol_given_on_cli = [&] {
      for (const std::string& a : args) {
        if (a == "--tol" || a.rfind("--tol=", 0) == 0) return true;
      }
      return false;
    }();
    if (!tol_given_on_cli) tol = default_tolerance();

    app.parse(static_cast<int>(argv.size()), argv.data());

    if (analyze->parsed()) {
      run_analyze(state_path, setup_path, mixed, tol, out_path);
    } else if (sweep->parsed()) {
      run_fermion_sweep(grid_points, out_path);
    } else if (cloud->parsed()) {
      run_boson_cloud(samples, seed, out_path);
    } else if (iid->parsed()) {
      run_iid_scan(num_particles, local_dim, trials, setups, seed);
    } else if (converse->parsed()) {
      run_converse_scan(state_path, converse_trials, seed, out_path, tol);
    }
    return 0;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const validation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace relent
