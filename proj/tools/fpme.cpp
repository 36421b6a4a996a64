#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "fpme/config.hpp"
#include "fpme/experiments.hpp"
#include "fpme/runner.hpp"
#include "fpme/selfcheck.hpp"
#include "fpme/snapshot.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerdict = 1;
constexpr int kExitUsage = 2;

std::string snapshot_name(long long index) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "snapshot_%06lld.snap", index);
  return buf;
}

int cmd_run(const std::string& config_path) {
  fpme::RunConfig cfg = fpme::load_config(config_path);
  fs::create_directories(cfg.output_dir);

  std::ofstream csv(fs::path(cfg.output_dir) / "diagnostics.csv",
                    std::ios::binary);
  if (!csv) throw std::runtime_error("io-error: cannot write diagnostics.csv");
  csv << fpme::diagnostics_csv_header() << '\n';

  long long sample_idx = 0;
  auto on_sample = [&](const fpme::State& state,
                       const fpme::DiagnosticsCollector&) {
    if (cfg.snapshot_every > 0 && sample_idx % cfg.snapshot_every == 0)
      fpme::write_snapshot(state, cfg.params.s,
                           (fs::path(cfg.output_dir) / snapshot_name(sample_idx))
                               .string());
    ++sample_idx;
  };

  const auto result =
      fpme::simulate(cfg.params, cfg.init, cfg.stepper, on_sample);
  for (const auto& rec : result.records)
    csv << fpme::diagnostics_csv_row(rec) << '\n';
  csv.close();

  fpme::write_snapshot(result.final_state, cfg.params.s,
                       (fs::path(cfg.output_dir) / "final.snap").string());
  std::cout << "run complete: " << result.steps << " steps, "
            << result.records.size() << " samples, t = "
            << result.final_state.t << '\n';
  return kExitOk;
}

std::vector<std::pair<double, double>> read_h_series(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("io-error: cannot open " + path);
  std::vector<std::pair<double, double>> series;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (first) {  // header
      first = false;
      continue;
    }
    std::istringstream row(line);
    std::string t_str, h_str;
    if (!std::getline(row, t_str, ',') || !std::getline(row, h_str, ','))
      throw std::runtime_error("parse-error: bad CSV row: " + line);
    series.emplace_back(std::stod(t_str), std::stod(h_str));
  }
  return series;
}

int cmd_decay_fit(const std::string& csv_path, double s, double tmin,
                  double tmax) {
  const auto series = read_h_series(csv_path);
  if (series.empty()) throw std::runtime_error("empty CSV: " + csv_path);
  if (tmax <= 0.0) tmax = series.back().first;
  const auto fit = fpme::decay_fit(series, tmin, tmax, s);
  std::cout << "window: [" << fit.t_min << ", " << fit.t_max << "]\n"
            << "samples: " << fit.samples << '\n'
            << "lambda_hat: " << fit.lambda_hat << '\n'
            << "fit_residual: " << fit.residual << '\n'
            << "lambda_theory: " << fit.lambda_ref << '\n'
            << "verdict: " << (fit.pass ? "pass" : "fail") << '\n';
  return fit.pass ? kExitOk : kExitVerdict;
}

int cmd_compare(const std::string& config_path, double eps, double T) {
  fpme::RunConfig cfg = fpme::load_config(config_path);
  const auto series =
      fpme::weak_strong_experiment(cfg.init, eps, cfg.params, T, cfg.stepper);
  std::cout << "eps: " << eps << '\n'
            << "T: " << T << '\n'
            << "h_rel_0: " << series.samples.front().h_rel << '\n'
            << "h_rel_T: " << series.samples.back().h_rel << '\n'
            << "K_hat: " << series.k_hat << '\n'
            << "sup_delta_q: " << series.sup_delta_q << '\n'
            << "grad_v_norm: " << series.grad_v_norm << " (nu = " << series.nu
            << ")\n"
            << "verdict: " << (series.envelope_pass ? "pass" : "fail") << '\n';
  return series.envelope_pass ? kExitOk : kExitVerdict;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudo-spectral simulator for the coupled nonlocal "
               "porous-medium system"};
  app.require_subcommand(1);

  std::string config_path, csv_path;
  double s = 0.75, tmin = 1.0, tmax = 0.0, eps = 1e-3, T = 2.0;
  unsigned long long seed = 0;

  auto* run = app.add_subcommand("run", "Simulate a config file");
  run->add_option("config", config_path, "config file")->required();

  auto* fit = app.add_subcommand("decay-fit", "Fit H(t) decay from a CSV");
  fit->add_option("csv", csv_path, "diagnostics CSV")->required();
  fit->add_option("--s", s, "fractional order")->required();
  fit->add_option("--tmin", tmin, "window start (default 1)");
  fit->add_option("--tmax", tmax, "window end (default: last sample)");

  auto* cmp = app.add_subcommand("compare", "Perturbed-twin stability run");
  cmp->add_option("config", config_path, "base config file")->required();
  cmp->add_option("--eps", eps, "perturbation scale")->required();
  cmp->add_option("--T", T, "final time")->required();

  auto* chk = app.add_subcommand("check", "Built-in oracle/invariant suite");
  chk->add_option("--seed", seed, "RNG seed for random fields");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (run->parsed()) return cmd_run(config_path);
    if (fit->parsed()) return cmd_decay_fit(csv_path, s, tmin, tmax);
    if (cmp->parsed()) return cmd_compare(config_path, eps, T);
    return fpme::run_self_check(std::cout, seed) ? kExitOk : kExitVerdict;
  } catch (const fpme::ConfigError& e) {
    std::cerr << "config error (line " << e.line << "): " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    const std::string what = e.what();
    return what.rfind("io-error", 0) == 0 || what.rfind("parse-error", 0) == 0
               ? kExitUsage
               : kExitVerdict;
  }
}
