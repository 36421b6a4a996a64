#pragma once

#include <string>

#include "fpme/model.hpp"

namespace fpme {

/// Deterministic binary snapshot of a full state: one "FPME1" section per
/// field (u first, then p), each with an ASCII header and a little-endian
/// float64 payload. Round trips are bit-identical.
void write_snapshot(const State& state, double s, const std::string& path);

struct SnapshotData {
  State state;
  double s = 0;
};

/// Throws std::runtime_error on io-error, malformed-header or
/// truncated-payload.
SnapshotData read_snapshot(const std::string& path);

}  // namespace fpme
