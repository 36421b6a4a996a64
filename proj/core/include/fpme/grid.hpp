#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace fpme {

/// Wavenumber bookkeeping for a periodic lattice with FFT mode ordering.
///
/// Two per-axis tables are kept: the full frequencies (used by even
/// multipliers such as |k|^{2s}) and the derivative frequencies, where the
/// asymmetric Nyquist mode is zeroed so that first derivatives of real
/// fields stay real.
class WavenumberTable {
public:
  WavenumberTable(int dim, int n, double length);

  int dim() const { return dim_; }
  int n() const { return n_; }
  std::size_t size() const { return size_; }

  /// Physical wavenumber component along one axis for lattice index m.
  double k_axis(int m) const { return k_axis_[static_cast<std::size_t>(m)]; }
  /// Same, with the Nyquist mode zeroed (odd-derivative multiplier).
  double k_deriv(int m) const { return k_deriv_[static_cast<std::size_t>(m)]; }

  /// |k|^2 per lattice point (full frequencies).
  const std::vector<double>& k2() const { return k2_; }
  /// Sum of squared derivative frequencies per lattice point.
  const std::vector<double>& k2_deriv() const { return k2_deriv_; }
  /// |k|^{2s} per lattice point; cached per s, zero mode maps to 0.
  const std::vector<double>& k2s(double s) const;

private:
  int dim_;
  int n_;
  std::size_t size_;
  std::vector<double> k_axis_;
  std::vector<double> k_deriv_;
  std::vector<double> k2_;
  std::vector<double> k2_deriv_;
  mutable std::mutex cache_mutex_;
  mutable std::map<double, std::shared_ptr<const std::vector<double>>> k2s_cache_;
};

/// Periodic uniform lattice: same point count and box length on every axis.
/// Immutable after construction and cheap to copy (the wavenumber table is
/// shared).
class Grid {
public:
  Grid() = default;

  int dim() const { return dim_; }
  int n() const { return n_; }
  double length() const { return length_; }
  double spacing() const { return spacing_; }
  std::size_t size() const { return size_; }
  /// Physical volume element (dx)^dim of one cell.
  double cell_volume() const { return cell_volume_; }
  /// Box volume L^dim.
  double volume() const { return volume_; }

  const WavenumberTable& waves() const { return *waves_; }

  bool operator==(const Grid& other) const {
    return dim_ == other.dim_ && n_ == other.n_ && length_ == other.length_;
  }

  /// Coordinate of lattice point index m along one axis, in [0, L).
  double coord(int m) const { return spacing_ * m; }

  /// Decompose a flat row-major index into per-axis indices.
  std::array<int, 3> unflatten(std::size_t flat) const;

  friend Grid make_grid(int dim, int n, double length);

private:
  int dim_ = 0;
  int n_ = 0;
  double length_ = 0.0;
  double spacing_ = 0.0;
  std::size_t size_ = 0;
  double cell_volume_ = 0.0;
  double volume_ = 0.0;
  std::shared_ptr<const WavenumberTable> waves_;
};

/// Builds a Grid. Throws std::invalid_argument on invalid-dimension
/// (dim not in {1,2,3}), invalid-size (n < 8 or not a power of two) or
/// nonpositive-length.
Grid make_grid(int dim, int n, double length);

}  // namespace fpme
