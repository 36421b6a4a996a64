#include "fpme/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fpme/spectral.hpp"

namespace fpme {

namespace {

constexpr double kEpsFloor = 1e-14;

std::size_t axis_stride(const Grid& grid, int axis) {
  std::size_t stride = 1;
  for (int d = grid.dim() - 1; d > axis; --d)
    stride *= static_cast<std::size_t>(grid.n());
  return stride;
}

// Flat index of the +1 neighbor along `axis`, periodic wrap.
std::size_t neighbor(const Grid& grid, std::size_t i, int axis,
                     std::size_t stride) {
  const auto n = static_cast<std::size_t>(grid.n());
  const std::size_t m = (i / stride) % n;
  return (m + 1 == n) ? i - (n - 1) * stride : i + stride;
}

VectorField node_velocity(const Field& p,
                          const std::optional<VectorField>& override_v) {
  if (override_v) {
    if (!(override_v->grid == p.grid))
      throw std::invalid_argument("velocity override grid mismatch");
    return *override_v;
  }
  return spectral::gradient(p);
}

double max_face_speed(const VectorField& v) {
  const Grid& grid = v.grid;
  double vmax = 0.0;
  for (int d = 0; d < grid.dim(); ++d) {
    const auto& comp = v.comps[static_cast<std::size_t>(d)].values;
    const std::size_t stride = axis_stride(grid, d);
    for (std::size_t i = 0; i < comp.size(); ++i) {
      const std::size_t j = neighbor(grid, i, d, stride);
      vmax = std::max(vmax, std::abs(0.5 * (comp[i] + comp[j])));
    }
  }
  return vmax;
}

}  // namespace

double cfl_dt(const Field& u, const Field& p, double safety,
              const std::optional<VectorField>& velocity_override) {
  (void)u;
  const VectorField v = node_velocity(p, velocity_override);
  return safety * p.grid.spacing() / (max_face_speed(v) + kEpsFloor);
}

Field transport_step(const Field& u, const Field& p, double dt,
                     const std::optional<VectorField>& velocity_override) {
  const Grid& grid = u.grid;
  const VectorField v = node_velocity(p, velocity_override);
  const double vmax = max_face_speed(v);
  if (dt > grid.spacing() / (vmax + kEpsFloor))
    throw std::runtime_error("cfl-violation: dt too large, max |v| = " +
                             std::to_string(vmax));

  Field out = u;
  const double coeff = dt / grid.spacing();
  std::vector<double> flux(grid.size());
  for (int d = 0; d < grid.dim(); ++d) {
    const auto& comp = v.comps[static_cast<std::size_t>(d)].values;
    const std::size_t stride = axis_stride(grid, d);
    // flux[i] lives on the face between cell i and its +1 neighbor; the
    // transport velocity of u is minus the pressure gradient.
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const std::size_t j = neighbor(grid, i, d, stride);
      const double w = -0.5 * (comp[i] + comp[j]);
      flux[i] = w > 0.0 ? w * u.values[i] : w * u.values[j];
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const std::size_t j = neighbor(grid, i, d, stride);
      out.values[j] += coeff * flux[i];
      out.values[i] -= coeff * flux[i];
    }
  }
  return out;
}

Field pressure_step(const Field& p, const Field& u, double s, double dt) {
  spectral::require_s_range(s);
  if (!(dt > 0.0)) throw std::invalid_argument("pressure_step: dt must be > 0");
  const Grid& grid = p.grid;

  std::vector<double> source(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    source[i] = u.values[i] * u.values[i];

  auto p_hat = spectral::forward(grid, p.values);
  const auto src_hat = spectral::forward(grid, source);
  const auto& mult = grid.waves().k2s(s);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double z = mult[i] * dt;
    const double decay = std::exp(-z);
    const double phi = (z == 0.0) ? 1.0 : -std::expm1(-z) / z;
    p_hat[i] = decay * p_hat[i] + dt * phi * src_hat[i];
  }

  Field out(grid);
  out.values = spectral::inverse(grid, p_hat);
  return out;
}

State step(const State& state, const Params& params,
           const StepperConfig& config) {
  const double remaining = params.t_end - state.t;
  const double dt = std::min(
      {cfl_dt(state.u, state.p, config.cfl_safety, config.velocity_override),
       params.dt_max, remaining});
  return step_with_dt(state, params, config, dt);
}

State step_with_dt(const State& state, const Params& params,
                   const StepperConfig& config, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("step: no time remaining");

  State next;
  next.t = state.t + dt;
  if (config.splitting == Splitting::strang) {
    Field u_half =
        transport_step(state.u, state.p, 0.5 * dt, config.velocity_override);
    next.p = pressure_step(state.p, u_half, params.s, dt);
    next.u =
        transport_step(u_half, next.p, 0.5 * dt, config.velocity_override);
  } else {
    next.u = transport_step(state.u, state.p, dt, config.velocity_override);
    next.p = pressure_step(state.p, next.u, params.s, dt);
  }
  return next;
}

}  // namespace fpme
