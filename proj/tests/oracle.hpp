#pragma once

// Test-only dense-DFT oracle: O(N^2) transforms built straight from the
// definition, kept independent of the FFT-based operator path under test.

#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "fpme/field.hpp"

namespace fpme::testing {

inline std::vector<std::complex<double>> dense_forward(
    const Grid& grid, const std::vector<double>& f) {
  const std::size_t N = grid.size();
  const double base = -2.0 * std::numbers::pi / grid.n();
  std::vector<std::complex<double>> out(N);
  for (std::size_t k = 0; k < N; ++k) {
    const auto kidx = grid.unflatten(k);
    std::complex<double> sum = 0.0;
    for (std::size_t x = 0; x < N; ++x) {
      const auto xidx = grid.unflatten(x);
      double dot = 0.0;
      for (int d = 0; d < grid.dim(); ++d)
        dot += static_cast<double>(kidx[static_cast<std::size_t>(d)]) *
               static_cast<double>(xidx[static_cast<std::size_t>(d)]);
      sum += f[x] * std::polar(1.0, base * dot);
    }
    out[k] = sum;
  }
  return out;
}

inline std::vector<double> dense_inverse(
    const Grid& grid, const std::vector<std::complex<double>>& F) {
  const std::size_t N = grid.size();
  const double base = 2.0 * std::numbers::pi / grid.n();
  std::vector<double> out(N);
  for (std::size_t x = 0; x < N; ++x) {
    const auto xidx = grid.unflatten(x);
    std::complex<double> sum = 0.0;
    for (std::size_t k = 0; k < N; ++k) {
      const auto kidx = grid.unflatten(k);
      double dot = 0.0;
      for (int d = 0; d < grid.dim(); ++d)
        dot += static_cast<double>(kidx[static_cast<std::size_t>(d)]) *
               static_cast<double>(xidx[static_cast<std::size_t>(d)]);
      sum += F[k] * std::polar(1.0, base * dot);
    }
    out[x] = sum.real() / static_cast<double>(N);
  }
  return out;
}

// Applies a diagonal-in-Fourier operator through the dense transforms.
inline std::vector<double> dense_apply(
    const Grid& grid, const std::vector<double>& f,
    const std::function<std::complex<double>(std::size_t)>& multiplier) {
  auto F = dense_forward(grid, f);
  for (std::size_t k = 0; k < F.size(); ++k) F[k] *= multiplier(k);
  return dense_inverse(grid, F);
}

inline Field random_field(const Grid& grid, unsigned long long seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Field f(grid);
  for (auto& v : f.values) v = dist(rng);
  return f;
}

inline double max_abs_diff(const std::vector<double>& a,
                           const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline std::size_t axis_stride(const Grid& grid, int axis) {
  std::size_t stride = 1;
  for (int d = grid.dim() - 1; d > axis; --d)
    stride *= static_cast<std::size_t>(grid.n());
  return stride;
}

}  // namespace fpme::testing
