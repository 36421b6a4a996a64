#include "fpme/runner.hpp"

#include <algorithm>

namespace fpme {

RunResult simulate(const Params& params, const InitialData& init,
                   const StepperConfig& config,
                   const SampleCallback& on_sample) {
  return simulate_state(make_initial(init, params.grid), params, config,
                        on_sample);
}

RunResult simulate_state(State state, const Params& params,
                         const StepperConfig& config,
                         const SampleCallback& on_sample) {
  params.validate();
  StepperConfig cfg = config;
  cfg.cfl_safety = params.cfl_safety;  // run-level safety wins

  RunResult result;
  DiagnosticsCollector coll(params.grid, params);
  coll.prime(state);

  auto emit = [&](const State& s) {
    result.records.push_back(coll.sample(s));
    result.boundary_fraction.push_back(boundary_mass_fraction(s.u));
    if (on_sample) on_sample(s, coll);
  };
  emit(state);

  const double t_eps = 1e-12 * std::max(1.0, params.t_end);
  while (params.t_end - state.t > t_eps) {
    const double t_before = state.t;
    state = step(state, params, cfg);
    coll.on_step(state, state.t - t_before);
    ++result.steps;
    const bool last = params.t_end - state.t <= t_eps;
    if (result.steps % params.sample_every == 0 || last) emit(state);
  }

  result.final_state = std::move(state);
  return result;
}

}  // namespace fpme
