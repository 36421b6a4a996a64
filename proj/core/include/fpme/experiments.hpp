#pragma once

#include <span>
#include <utility>
#include <vector>

#include "fpme/diagnostics.hpp"
#include "fpme/stepper.hpp"

namespace fpme {

/// Decay exponent 3(1-s) / (2s(5+2s)) of the entropy upper bound,
/// valid for s in [3/4, 1). Throws std::domain_error outside that range.
double lambda_theory(double s);

struct DecayFit {
  double t_min = 0;
  double t_max = 0;
  int samples = 0;
  double lambda_hat = 0;   // minus the log-log slope
  double residual = 0;     // max |log H - fit|
  double lambda_ref = 0;   // lambda_theory(s)
  bool pass = false;       // lambda_hat >= lambda_ref - 2 * residual
};

/// Least-squares line on (log t, log H) over the window [t_min, t_max].
/// The verdict is one-sided: decay at least as fast as the reference bound
/// passes. Requires >= 8 samples in the window, all H > 0.
DecayFit decay_fit(std::span<const std::pair<double, double>> H_series,
                   double t_min, double t_max, double s);

/// Relative entropy int((u-v)^2 + |grad(p-q)|^2 / 2) dx between two states
/// on the same grid. Symmetric; invariant under shifting both pressures by
/// the same constant.
double relative_entropy(const State& a, const State& b);

struct RelEntropySample {
  double t = 0;
  double h_rel = 0;
};

struct RelEntropySeries {
  std::vector<RelEntropySample> samples;
  double k_hat = 0;         // log-linear fit rate of h_rel(t)
  double sup_delta_q = 0;   // sup over time of max Laplacian of q
  double grad_v_norm = 0;   // sup over time of ||grad v||_{L^m}, m = 12/(3+2s) + nu
  double nu = 0.5;
  bool envelope_pass = false;  // h_rel(t) <= e^{k_hat t} h_rel(0) * (1 + tol)
  double envelope_tol = 0.05;
};

/// Evolves a base run (the fine "strong" reference) and a density-perturbed
/// twin u0 -> u0 (1 + eps cos(2 pi x_1 / L)) with identical numerics and a
/// shared dt sequence, and records the relative entropy between them.
RelEntropySeries weak_strong_experiment(const InitialData& base, double eps,
                                        const Params& params, double t_end,
                                        const StepperConfig& config = {});

struct ScanRow {
  double eps = 0;
  double h_rel_0 = 0;
  double h_rel_T = 0;
  double ratio = 1.0;  // h_rel_T / h_rel_0, defined as 1 when both vanish
};

/// weak_strong_experiment over a sorted list of perturbation sizes.
std::vector<ScanRow> continuous_dependence_scan(
    std::span<const double> eps_list, const InitialData& base,
    const Params& params, double t_end, const StepperConfig& config = {});

/// End of the pre-finite-size fit window: the first sample time at which the
/// boundary shell holds more than 1e-6 of the mass, or H has flattened onto
/// the torus floor V * mean(u)^2. Returns the last sample time if neither
/// trigger fires.
double finite_size_window_end(std::span<const DiagnosticsRecord> records,
                              std::span<const double> boundary_fraction,
                              double volume);

}  // namespace fpme
