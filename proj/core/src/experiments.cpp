#include "fpme/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fpme/spectral.hpp"

namespace fpme {

double lambda_theory(double s) {
  if (!(s >= 0.75) || !(s < 1.0))
    throw std::domain_error("s-out-of-range: decay rate needs s in [3/4, 1)");
  return 3.0 * (1.0 - s) / (2.0 * s * (5.0 + 2.0 * s));
}

namespace {

struct LineFit {
  double intercept = 0;
  double slope = 0;
  double max_residual = 0;
};

LineFit least_squares(std::span<const double> x, std::span<const double> y) {
  const auto n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  LineFit fit;
  const double denom = n * sxx - sx * sx;
  fit.slope = denom != 0.0 ? (n * sxy - sx * sy) / denom : 0.0;
  fit.intercept = (sy - fit.slope * sx) / n;
  for (std::size_t i = 0; i < x.size(); ++i)
    fit.max_residual = std::max(
        fit.max_residual, std::abs(y[i] - fit.intercept - fit.slope * x[i]));
  return fit;
}

}  // namespace

DecayFit decay_fit(std::span<const std::pair<double, double>> H_series,
                   double t_min, double t_max, double s) {
  if (!(t_min >= 1.0))
    throw std::invalid_argument("decay window must start at t >= 1");
  std::vector<double> logt, logh;
  for (const auto& [t, h] : H_series) {
    if (t < t_min || t > t_max) continue;
    if (!(h > 0.0))
      throw std::invalid_argument("nonpositive-H: log fit needs H > 0");
    logt.push_back(std::log(t));
    logh.push_back(std::log(h));
  }
  if (logt.size() < 8)
    throw std::invalid_argument("window-empty: need at least 8 samples");

  const LineFit fit = least_squares(logt, logh);
  DecayFit out;
  out.t_min = t_min;
  out.t_max = t_max;
  out.samples = static_cast<int>(logt.size());
  out.lambda_hat = -fit.slope;
  out.residual = fit.max_residual;
  out.lambda_ref = lambda_theory(s);
  out.pass = out.lambda_hat >= out.lambda_ref - 2.0 * out.residual;
  return out;
}

double relative_entropy(const State& a, const State& b) {
  if (!(a.u.grid == b.u.grid))
    throw std::invalid_argument("grid-mismatch: states on different grids");
  const Grid& grid = a.u.grid;
  Field du(grid), dp(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    du.values[i] = a.u.values[i] - b.u.values[i];
    dp.values[i] = a.p.values[i] - b.p.values[i];
  }
  const auto grad = spectral::gradient(dp);
  double gp2 = 0.0;
  for (const auto& c : grad.comps) gp2 += l2_squared(c);
  return l2_squared(du) + 0.5 * gp2;
}

namespace {

// Perturbation factor 1 + eps cos(2 pi x_1 / L) applied to the density.
Field perturb_density(const Field& u, double eps) {
  Field out = u;
  const Grid& grid = u.grid;
  const double w = 2.0 * std::numbers::pi / grid.length();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto idx = grid.unflatten(i);
    out.values[i] *= 1.0 + eps * std::cos(w * grid.coord(idx[0]));
  }
  return out;
}

double lp_norm_of_gradient(const Field& v, double m) {
  const auto grad = spectral::gradient(v);
  const Grid& grid = v.grid;
  double sum = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double g2 = 0.0;
    for (const auto& c : grad.comps) g2 += c.values[i] * c.values[i];
    sum += std::pow(std::sqrt(g2), m);
  }
  return std::pow(sum * grid.cell_volume(), 1.0 / m);
}

}  // namespace

RelEntropySeries weak_strong_experiment(const InitialData& base, double eps,
                                        const Params& params, double t_end,
                                        const StepperConfig& config) {
  if (eps < 0.0) throw std::invalid_argument("perturbation scale must be >= 0");
  Params p = params;
  p.t_end = t_end;
  p.validate();

  State strong = make_initial(base, p.grid);
  State weak = strong;
  weak.u = perturb_density(strong.u, eps);

  StepperConfig cfg = config;
  cfg.cfl_safety = p.cfl_safety;

  RelEntropySeries series;
  const double m_exp = 12.0 / (3.0 + 2.0 * p.s) + series.nu;

  auto observe = [&]() {
    series.samples.push_back({strong.t, relative_entropy(weak, strong)});
    const Field lap_q = spectral::laplacian(strong.p);
    double lap_max = lap_q.values.empty() ? 0.0 : lap_q.values[0];
    for (double v : lap_q.values) lap_max = std::max(lap_max, v);
    series.sup_delta_q = std::max(series.sup_delta_q, lap_max);
    series.grad_v_norm =
        std::max(series.grad_v_norm, lp_norm_of_gradient(strong.u, m_exp));
  };
  observe();

  const double t_eps = 1e-12 * std::max(1.0, t_end);
  long long steps = 0;
  while (t_end - strong.t > t_eps) {
    // Shared dt keeps the two trajectories sampled at identical times and
    // makes the eps = 0 twin bit-identical.
    const double dt =
        std::min({cfl_dt(strong.u, strong.p, p.cfl_safety),
                  cfl_dt(weak.u, weak.p, p.cfl_safety), p.dt_max,
                  t_end - strong.t});
    strong = step_with_dt(strong, p, cfg, dt);
    weak = step_with_dt(weak, p, cfg, dt);
    ++steps;
    if (steps % p.sample_every == 0 || t_end - strong.t <= t_eps) observe();
  }

  // Log-linear rate of the relative entropy; all-zero series (eps = 0)
  // reports rate 0.
  std::vector<double> ts, logs;
  for (const auto& smp : series.samples) {
    if (smp.h_rel > 0.0) {
      ts.push_back(smp.t);
      logs.push_back(std::log(smp.h_rel));
    }
  }
  if (ts.size() >= 2) series.k_hat = least_squares(ts, logs).slope;

  const double h0 = series.samples.front().h_rel;
  series.envelope_pass = true;
  for (const auto& smp : series.samples) {
    const double bound =
        std::exp(series.k_hat * smp.t) * h0 * (1.0 + series.envelope_tol);
    if (smp.h_rel > bound && smp.h_rel > 1e-300) {
      if (h0 == 0.0 && smp.h_rel == 0.0) continue;
      series.envelope_pass = false;
    }
  }
  return series;
}

std::vector<ScanRow> continuous_dependence_scan(
    std::span<const double> eps_list, const InitialData& base,
    const Params& params, double t_end, const StepperConfig& config) {
  std::vector<ScanRow> rows;
  rows.reserve(eps_list.size());
  for (double eps : eps_list) {
    const auto series = weak_strong_experiment(base, eps, params, t_end, config);
    ScanRow row;
    row.eps = eps;
    row.h_rel_0 = series.samples.front().h_rel;
    row.h_rel_T = series.samples.back().h_rel;
    row.ratio = row.h_rel_0 > 0.0 ? row.h_rel_T / row.h_rel_0 : 1.0;
    rows.push_back(row);
  }
  return rows;
}

double finite_size_window_end(std::span<const DiagnosticsRecord> records,
                              std::span<const double> boundary_fraction,
                              double volume) {
  if (records.empty()) throw std::invalid_argument("empty-trajectory");
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    if (i < boundary_fraction.size() && boundary_fraction[i] > 1e-6)
      return r.t;
    const double floor = r.mass * r.mass / volume;
    if (r.H <= 2.0 * floor) return r.t;
  }
  return records.back().t;
}

}  // namespace fpme
