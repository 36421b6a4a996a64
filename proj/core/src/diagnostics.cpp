#include "fpme/diagnostics.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "fpme/spectral.hpp"

namespace fpme {

namespace {

double grad_l2sq(const Field& p) {
  const auto grad = spectral::gradient(p);
  double sum = 0.0;
  for (const auto& c : grad.comps) sum += l2_squared(c);
  return sum;
}

double center_distance(const Grid& grid, std::size_t flat) {
  const auto idx = grid.unflatten(flat);
  double r2 = 0.0;
  for (int d = 0; d < grid.dim(); ++d) {
    const double dx =
        grid.coord(idx[static_cast<std::size_t>(d)]) - 0.5 * grid.length();
    r2 += dx * dx;
  }
  return std::sqrt(r2);
}

}  // namespace

double entropy(const State& state) {
  return l2_squared(state.u) + 0.5 * grad_l2sq(state.p);
}

double dissipation(const State& state, double s) {
  return spectral::frac_sobolev_seminorm(state.p, s);
}

double moment(const State& state, const Params& params) {
  if (params.mode != Mode::truncation)
    throw std::logic_error("called-in-torus-mode: moment needs truncation mode");
  const Grid& grid = state.u.grid;
  const auto grad = spectral::gradient(state.p);
  double sum = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double gp2 = 0.0;
    for (const auto& c : grad.comps) gp2 += c.values[i] * c.values[i];
    sum += center_distance(grid, i) *
           (state.u.values[i] * state.u.values[i] + 0.5 * gp2);
  }
  return sum * grid.cell_volume();
}

double weighted_mass(const State& state) {
  const Grid& grid = state.u.grid;
  double sum = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double r = center_distance(grid, i);
    sum += state.u.values[i] * std::sqrt(1.0 + r * r);
  }
  return sum * grid.cell_volume();
}

double entropy_balance_residual(
    std::span<const DiagnosticsRecord> trajectory) {
  if (trajectory.size() < 2)
    throw std::invalid_argument(
        "empty-trajectory: need at least two samples");
  const double h0 = trajectory.front().H;
  const double denom = h0 > 0.0 ? h0 : 1.0;
  double integral = 0.0;
  double worst = 0.0;
  for (std::size_t i = 1; i < trajectory.size(); ++i) {
    const auto& a = trajectory[i - 1];
    const auto& b = trajectory[i];
    integral += 0.5 * (b.t - a.t) * (a.D + b.D);
    worst = std::max(worst, std::abs(b.H - h0 + integral) / denom);
  }
  return worst;
}

UAccumulator::UAccumulator(const Grid& grid)
    : grid_(grid), acc_(grid.size(), {0.0, 0.0}) {}

namespace {
std::vector<std::complex<double>> u_squared_spectrum(const Grid& grid,
                                                     const Field& u) {
  std::vector<double> sq(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    sq[i] = u.values[i] * u.values[i];
  return spectral::forward(grid, sq);
}
}  // namespace

void UAccumulator::update(const Field& u, double dt) {
  auto current = u_squared_spectrum(grid_, u);
  if (!has_prev_) {
    // First call primes the trapezoid; only dt == 0 makes sense here.
    prev_ = std::move(current);
    has_prev_ = true;
    t_ += dt;
    return;
  }
  for (std::size_t i = 0; i < acc_.size(); ++i)
    acc_[i] += 0.5 * dt * (prev_[i] + current[i]);
  prev_ = std::move(current);
  t_ += dt;
}

double UAccumulator::zero_mode_integral() const {
  return acc_[0].real() * grid_.cell_volume();
}

FourierBound fourier_bound_check(const UAccumulator& acc, double s, double T) {
  spectral::require_s_range(s);
  const auto& k2 = acc.grid().waves().k2();
  const double expo = 1.0 - s;
  double sum = 0.0;
  for (std::size_t i = 0; i < acc.spectrum().size(); ++i) {
    const double w = (k2[i] == 0.0) ? (s < 1.0 ? 0.0 : 1.0)
                                    : std::pow(k2[i], expo);
    sum += w * std::norm(acc.spectrum()[i]);
  }
  FourierBound out;
  out.lhs = sum * spectral::parseval_weight(acc.grid());
  out.ratio = out.lhs / std::pow(T, 3.0 - 5.0 / (2.0 * s));
  return out;
}

DiagnosticsCollector::DiagnosticsCollector(const Grid& grid,
                                           const Params& params)
    : params_(params), acc_(grid) {}

void DiagnosticsCollector::prime(const State& state) {
  prev_u_l2sq_ = l2_squared(state.u);
  prev_D_ = dissipation(state, params_.s);
  acc_.update(state.u, 0.0);
  primed_ = true;
}

void DiagnosticsCollector::on_step(const State& state, double dt) {
  if (!primed_) throw std::logic_error("collector not primed");
  const double u2 = l2_squared(state.u);
  const double d = dissipation(state, params_.s);
  int_u_l2sq_ += 0.5 * dt * (prev_u_l2sq_ + u2);
  int_D_ += 0.5 * dt * (prev_D_ + d);
  prev_u_l2sq_ = u2;
  prev_D_ = d;
  acc_.update(state.u, dt);
}

DiagnosticsRecord DiagnosticsCollector::sample(const State& state) const {
  DiagnosticsRecord r;
  r.t = state.t;
  r.u_l2sq = l2_squared(state.u);
  r.grad_p_l2sq = grad_l2sq(state.p);
  r.H = r.u_l2sq + 0.5 * r.grad_p_l2sq;
  r.D = dissipation(state, params_.s);
  r.mass = mass(state.u);
  r.p_l1 = 0.0;
  for (double v : state.p.values) r.p_l1 += std::abs(v);
  r.p_l1 *= state.p.grid.cell_volume();
  r.p_l2 = std::sqrt(l2_squared(state.p));
  r.mean_p = mean(state.p);
  r.moment =
      params_.mode == Mode::truncation ? moment(state, params_) : 0.0;
  r.weighted_mass = weighted_mass(state);
  r.int_u_l2sq = int_u_l2sq_;
  r.int_D = int_D_;
  return r;
}

std::string diagnostics_csv_header() {
  return "t,H,D,mass,u_l2sq,p_l1,p_l2,grad_p_l2sq,mean_p,moment,"
         "weighted_mass,int_u_l2sq,int_D";
}

std::string diagnostics_csv_row(const DiagnosticsRecord& r) {
  char buf[512];
  std::snprintf(buf, sizeof(buf),
                "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,"
                "%.17g,%.17g,%.17g,%.17g",
                r.t, r.H, r.D, r.mass, r.u_l2sq, r.p_l1, r.p_l2,
                r.grad_p_l2sq, r.mean_p, r.moment, r.weighted_mass,
                r.int_u_l2sq, r.int_D);
  return std::string(buf);
}

}  // namespace fpme
