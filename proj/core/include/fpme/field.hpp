#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "fpme/grid.hpp"

namespace fpme {

/// Real-valued samples on a Grid, row-major lattice order.
struct Field {
  Grid grid;
  std::vector<double> values;

  Field() = default;
  explicit Field(const Grid& g, double fill = 0.0)
      : grid(g), values(g.size(), fill) {}

  std::size_t size() const { return values.size(); }
  double& operator[](std::size_t i) { return values[i]; }
  double operator[](std::size_t i) const { return values[i]; }
};

/// One Field per spatial axis.
struct VectorField {
  Grid grid;
  std::vector<Field> comps;

  VectorField() = default;
  explicit VectorField(const Grid& g) : grid(g) {
    comps.reserve(static_cast<std::size_t>(g.dim()));
    for (int d = 0; d < g.dim(); ++d) comps.emplace_back(g);
  }
};

inline bool all_finite(const Field& f) {
  for (double v : f.values)
    if (!std::isfinite(v)) return false;
  return true;
}

/// Midpoint quadrature of f over the box: (dx)^dim * sum f.
inline double integrate(const Field& f) {
  double sum = 0.0;
  for (double v : f.values) sum += v;
  return sum * f.grid.cell_volume();
}

/// (dx)^dim * sum f^2, i.e. the squared L2 norm on the box.
inline double l2_squared(const Field& f) {
  double sum = 0.0;
  for (double v : f.values) sum += v * v;
  return sum * f.grid.cell_volume();
}

inline double mean(const Field& f) {
  double sum = 0.0;
  for (double v : f.values) sum += v;
  return sum / static_cast<double>(f.size());
}

inline double max_abs(const Field& f) {
  double m = 0.0;
  for (double v : f.values) m = std::max(m, std::abs(v));
  return m;
}

inline double min_value(const Field& f) {
  double m = f.values.empty() ? 0.0 : f.values[0];
  for (double v : f.values) m = std::min(m, v);
  return m;
}

}  // namespace fpme
