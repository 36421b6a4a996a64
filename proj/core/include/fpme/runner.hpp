#pragma once

#include <functional>

#include "fpme/diagnostics.hpp"
#include "fpme/stepper.hpp"

namespace fpme {

struct RunResult {
  std::vector<DiagnosticsRecord> records;
  /// Boundary-shell mass fraction per sample (parallel to records).
  std::vector<double> boundary_fraction;
  State final_state;
  long long steps = 0;
};

/// Called at every diagnostics sample (including t = 0 and the final state).
using SampleCallback =
    std::function<void(const State&, const DiagnosticsCollector&)>;

/// Advances the state to params.t_end, sampling every params.sample_every
/// steps. Deterministic: identical inputs produce identical results.
RunResult simulate(const Params& params, const InitialData& init,
                   const StepperConfig& config = {},
                   const SampleCallback& on_sample = {});

/// Same loop starting from an already-built state.
RunResult simulate_state(State state, const Params& params,
                         const StepperConfig& config = {},
                         const SampleCallback& on_sample = {});

}  // namespace fpme
