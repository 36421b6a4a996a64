#pragma once

#include <optional>

#include "fpme/model.hpp"

namespace fpme {

enum class Splitting { lie, strang };

struct StepperConfig {
  Splitting splitting = Splitting::strang;
  double cfl_safety = 0.4;
  /// Frozen advection velocity (testing hook); replaces grad p when set.
  std::optional<VectorField> velocity_override;
};

/// Largest stable transport step: safety * dx / (max face speed + 1e-14).
double cfl_dt(const Field& u, const Field& p, double safety,
              const std::optional<VectorField>& velocity_override = {});

/// Conservative donor-cell update of du/dt = div(u grad p); face velocities
/// are averages of the spectral node gradient. Mass-exact, positivity
/// preserving under the CFL precondition. Throws std::runtime_error
/// (cfl-violation) when dt exceeds cfl_dt(u, p, 1.0).
Field transport_step(const Field& u, const Field& p, double dt,
                     const std::optional<VectorField>& velocity_override = {});

/// Exact integrating-factor update of dp/dt = -(-Laplace)^s p + u^2 with the
/// source frozen over the substep. Unconditionally stable.
Field pressure_step(const Field& p, const Field& u, double s, double dt);

/// One full Strang (or Lie) step; dt = min(cfl_dt, dt_max, remaining time).
State step(const State& state, const Params& params,
           const StepperConfig& config);

/// Same splitting sequence with an externally chosen dt (paired-run and
/// convergence studies).
State step_with_dt(const State& state, const Params& params,
                   const StepperConfig& config, double dt);

}  // namespace fpme
