#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "fpme/model.hpp"

namespace fpme {

/// Per-sample scalar diagnostics. Field order is the CSV column order.
struct DiagnosticsRecord {
  double t = 0;
  double H = 0;            // entropy  int(u^2 + |grad p|^2 / 2)
  double D = 0;            // dissipation  int |(-Lap)^{s/2} grad p|^2
  double mass = 0;
  double u_l2sq = 0;
  double p_l1 = 0;
  double p_l2 = 0;
  double grad_p_l2sq = 0;
  double mean_p = 0;
  double moment = 0;         // truncation mode only, else 0
  double weighted_mass = 0;  // int u * sqrt(1 + |x - x_c|^2)
  double int_u_l2sq = 0;     // running int_0^t ||u||_2^2
  double int_D = 0;          // running int_0^t D
};

/// CSV header matching the DiagnosticsRecord field order.
std::string diagnostics_csv_header();
std::string diagnostics_csv_row(const DiagnosticsRecord& r);

/// Entropy H[u,p] = int u^2 dx + (1/2) int |grad p|^2 dx.
double entropy(const State& state);

/// Dissipation int |(-Lap)^{s/2} grad p|^2 dx.
double dissipation(const State& state, double s);

/// Moment int |x - x_c| (u^2 + |grad p|^2 / 2) dx. Truncation mode only;
/// throws std::logic_error when called in torus mode.
double moment(const State& state, const Params& params);

/// Weighted mass int u sqrt(1 + |x - x_c|^2) dx.
double weighted_mass(const State& state);

/// Max over samples of |H(t_n) - H(t_0) + int_0^{t_n} D| / H(t_0), with
/// trapezoid quadrature of D over the samples. Throws on an empty or
/// single-sample trajectory.
double entropy_balance_residual(std::span<const DiagnosticsRecord> trajectory);

/// Spectral accumulation of int_0^t u^2 dtau, trapezoid rule per step.
/// Spectrum entries are in the raw (unnormalized) transform scale.
class UAccumulator {
public:
  explicit UAccumulator(const Grid& grid);

  /// Advance the accumulator from the previous sample to u at t + dt.
  void update(const Field& u, double dt);

  double t() const { return t_; }
  const Grid& grid() const { return grid_; }
  const std::vector<std::complex<double>>& spectrum() const { return acc_; }

  /// Running int_0^t int u^2 dx dtau read off the zero mode.
  double zero_mode_integral() const;

private:
  Grid grid_;
  double t_ = 0.0;
  std::vector<std::complex<double>> acc_;
  std::vector<std::complex<double>> prev_;
  bool has_prev_ = false;
};

struct FourierBound {
  double lhs = 0;    // Parseval-scaled sum |k|^{2(1-s)} |U(k,T)|^2
  double ratio = 0;  // lhs / T^{3 - 5/(2s)}
};

FourierBound fourier_bound_check(const UAccumulator& acc, double s, double T);

/// Fills the norm and running-integral fields of a DiagnosticsRecord.
class DiagnosticsCollector {
public:
  DiagnosticsCollector(const Grid& grid, const Params& params);

  /// Call once per accepted step with the post-step state.
  void on_step(const State& state, double dt);

  /// Sample the current state into a record (uses the running integrals).
  DiagnosticsRecord sample(const State& state) const;

  const UAccumulator& accumulator() const { return acc_; }

private:
  Params params_;
  UAccumulator acc_;
  double int_u_l2sq_ = 0.0;
  double int_D_ = 0.0;
  double prev_u_l2sq_ = 0.0;
  double prev_D_ = 0.0;
  bool primed_ = false;

  friend class Runner;

public:
  /// Seed the trapezoid accumulators with the t = 0 state.
  void prime(const State& state);
};

}  // namespace fpme
