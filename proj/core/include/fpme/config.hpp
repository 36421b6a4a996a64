#pragma once

#include <stdexcept>
#include <string>

#include "fpme/runner.hpp"

namespace fpme {

/// Everything a batch run needs: solver parameters, initial data, output
/// location and cadences.
struct RunConfig {
  Params params;
  InitialData init;
  StepperConfig stepper;
  std::string output_dir = "out";
  int snapshot_every = 0;  // steps between snapshots; 0 = final state only
  unsigned long long seed = 0;  // randomized property tests only
};

struct ConfigError : std::runtime_error {
  int line;
  ConfigError(int line_, const std::string& what_)
      : std::runtime_error(what_), line(line_) {}
};

/// Parses newline-separated "key = value" text ('#' starts a comment).
/// Unknown keys and constraint violations raise ConfigError with the
/// offending line number.
RunConfig parse_config(const std::string& text);

/// Reads and parses a config file; throws std::runtime_error if unreadable.
RunConfig load_config(const std::string& path);

}  // namespace fpme
