#pragma once

#include <iosfwd>

namespace fpme {

/// Built-in oracle/invariant suite behind the `check` CLI subcommand:
/// dense-DFT operator equivalence, Parseval consistency, transform round
/// trip, mass conservation and positivity, homogeneous-state balance.
/// Prints one line per check; returns false if any check fails.
bool run_self_check(std::ostream& out, unsigned long long seed = 0);

}  // namespace fpme
