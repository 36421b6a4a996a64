#include "fpme/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fpme {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

std::size_t ipow(int base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) r *= static_cast<std::size_t>(base);
  return r;
}

}  // namespace

WavenumberTable::WavenumberTable(int dim, int n, double length)
    : dim_(dim), n_(n), size_(ipow(n, dim)) {
  const double dk = 2.0 * std::numbers::pi / length;
  k_axis_.resize(static_cast<std::size_t>(n));
  k_deriv_.resize(static_cast<std::size_t>(n));
  for (int m = 0; m < n; ++m) {
    const int freq = (m <= n / 2 - 1) ? m : m - n;
    k_axis_[static_cast<std::size_t>(m)] = dk * freq;
    // Nyquist (freq == -n/2) zeroed for odd derivatives.
    k_deriv_[static_cast<std::size_t>(m)] = (freq == -n / 2) ? 0.0 : dk * freq;
  }

  k2_.resize(size_);
  k2_deriv_.resize(size_);
  for (std::size_t flat = 0; flat < size_; ++flat) {
    std::size_t rest = flat;
    double sum_full = 0.0, sum_deriv = 0.0;
    for (int d = dim - 1; d >= 0; --d) {
      const int m = static_cast<int>(rest % static_cast<std::size_t>(n));
      rest /= static_cast<std::size_t>(n);
      sum_full += k_axis_[static_cast<std::size_t>(m)] *
                  k_axis_[static_cast<std::size_t>(m)];
      sum_deriv += k_deriv_[static_cast<std::size_t>(m)] *
                   k_deriv_[static_cast<std::size_t>(m)];
    }
    k2_[flat] = sum_full;
    k2_deriv_[flat] = sum_deriv;
  }
}

const std::vector<double>& WavenumberTable::k2s(double s) const {
  std::scoped_lock lock(cache_mutex_);
  auto it = k2s_cache_.find(s);
  if (it == k2s_cache_.end()) {
    auto table = std::make_shared<std::vector<double>>(size_);
    for (std::size_t i = 0; i < size_; ++i)
      (*table)[i] = (k2_[i] == 0.0) ? 0.0 : std::pow(k2_[i], s);
    it = k2s_cache_.emplace(s, std::move(table)).first;
  }
  return *it->second;
}

std::array<int, 3> Grid::unflatten(std::size_t flat) const {
  std::array<int, 3> idx{0, 0, 0};
  for (int d = dim_ - 1; d >= 0; --d) {
    idx[static_cast<std::size_t>(d)] =
        static_cast<int>(flat % static_cast<std::size_t>(n_));
    flat /= static_cast<std::size_t>(n_);
  }
  return idx;
}

Grid make_grid(int dim, int n, double length) {
  if (dim < 1 || dim > 3)
    throw std::invalid_argument("invalid-dimension: dim must be 1, 2 or 3");
  if (n < 8 || !is_power_of_two(n))
    throw std::invalid_argument(
        "invalid-size: n must be a power of two >= 8");
  if (!(length > 0.0))
    throw std::invalid_argument("nonpositive-length: box length must be > 0");

  Grid g;
  g.dim_ = dim;
  g.n_ = n;
  g.length_ = length;
  g.spacing_ = length / n;
  g.size_ = ipow(n, dim);
  g.cell_volume_ = std::pow(g.spacing_, dim);
  g.volume_ = std::pow(length, dim);
  g.waves_ = std::make_shared<const WavenumberTable>(dim, n, length);
  return g;
}

}  // namespace fpme
