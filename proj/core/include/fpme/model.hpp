#pragma once

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fpme/field.hpp"

namespace fpme {

enum class Mode { torus, truncation };

/// Problem parameters. The fractional order s lives in (1/2, 1]; decay-rate
/// comparisons additionally expect s in [3/4, 1).
struct Params {
  double s = 0.75;
  Grid grid;
  double cfl_safety = 0.4;
  double dt_max = 0.1;
  double t_end = 1.0;
  int sample_every = 1;
  Mode mode = Mode::torus;

  void validate() const;  // throws std::invalid_argument / std::domain_error
};

/// The evolving pair (u, p) at time t.
struct State {
  Field u;
  Field p;
  double t = 0.0;
};

struct ZeroInit {};
struct GaussianBump {
  double amplitude = 1.0;
  double width = 1.0;
  std::optional<std::array<double, 3>> center;  // defaults to the box center
};
struct CosinePerturbation {
  double base = 1.0;
  double amplitude = 0.0;
  int mode = 1;
};
struct FromSnapshot {
  std::string path;
};
using FieldInit =
    std::variant<ZeroInit, GaussianBump, CosinePerturbation, FromSnapshot>;

/// Initial-condition spec; u0 and p0 are generated independently.
struct InitialData {
  FieldInit u0 = ZeroInit{};
  FieldInit p0 = ZeroInit{};
};

/// Builds the t = 0 state. Deterministic; throws on negative-amplitude and
/// snapshot-grid-mismatch.
State make_initial(const InitialData& spec, const Grid& grid);

struct AdmissibilityEntry {
  std::string name;
  double value;
  bool pass;
};
struct AdmissibilityReport {
  std::vector<AdmissibilityEntry> entries;
  bool all_pass() const;
};

/// Finite-value and integrability checks on (u0, p0); a report, not a gate.
AdmissibilityReport admissibility_report(const State& state,
                                         const Params& params);

/// Mass of the density with the physical volume element.
inline double mass(const Field& u) { return integrate(u); }

/// Fraction of mass(u) in the outermost 10% shell of the box.
double boundary_mass_fraction(const Field& u);

}  // namespace fpme
