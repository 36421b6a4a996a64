#include "fpme/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace fpme::spectral {

namespace {

// Plans are cached per (dim, n, sign). Creation is serialized; execution
// through fftw_execute_dft on per-call buffers is thread safe.
class PlanCache {
public:
  fftw_plan get(int dim, int n, int sign) {
    std::scoped_lock lock(mutex_);
    const auto key = std::make_tuple(dim, n, sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;

    std::size_t total = 1;
    int dims[3] = {n, n, n};
    for (int d = 0; d < dim; ++d) total *= static_cast<std::size_t>(n);
    std::vector<fftw_complex> in(total), out(total);
    fftw_plan plan = fftw_plan_dft(dim, dims, in.data(), out.data(), sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!plan) throw std::runtime_error("fftw plan creation failed");
    plans_.emplace(key, plan);
    return plan;
  }

private:
  std::mutex mutex_;
  std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

void execute(const Grid& grid, int sign, std::vector<std::complex<double>>& in,
             std::vector<std::complex<double>>& out) {
  fftw_plan plan = plan_cache().get(grid.dim(), grid.n(), sign);
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
}

std::vector<std::complex<double>> forward_complex(
    const Grid& grid, std::span<const double> values) {
  if (values.size() != grid.size())
    throw std::invalid_argument("field size does not match grid");
  std::vector<std::complex<double>> in(values.begin(), values.end());
  std::vector<std::complex<double>> out(in.size());
  execute(grid, FFTW_FORWARD, in, out);
  return out;
}

}  // namespace

std::vector<std::complex<double>> forward(const Grid& grid,
                                          std::span<const double> values) {
  return forward_complex(grid, values);
}

std::vector<double> inverse(const Grid& grid,
                            std::span<const std::complex<double>> spectrum) {
  if (spectrum.size() != grid.size())
    throw std::invalid_argument("spectrum size does not match grid");
  std::vector<std::complex<double>> in(spectrum.begin(), spectrum.end());
  std::vector<std::complex<double>> out(in.size());
  execute(grid, FFTW_BACKWARD, in, out);

  const double scale = 1.0 / static_cast<double>(grid.size());
  std::vector<double> result(out.size());
  double imag2 = 0.0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    result[i] = out[i].real() * scale;
    const double im = out[i].imag() * scale;
    imag2 += im * im;
  }
  // Conjugate symmetry must survive every multiplier we apply.  The residue
  // is measured against the spectrum's energy, not the (possibly cancelling)
  // real output.
  double ref = 0.0;
  for (const auto& c : in) ref += std::norm(c);
  ref *= scale * scale;
  if (imag2 > 1e-16 * (ref + 1e-300))
    throw std::runtime_error("inverse transform lost conjugate symmetry");
  return result;
}

void require_s_range(double s) {
  if (!(s > 0.5) || !(s <= 1.0))
    throw std::domain_error("s-out-of-range: s must be in (1/2, 1]");
}

Field frac_laplacian(const Field& f, double s) {
  require_s_range(s);
  auto spec = forward(f.grid, f.values);
  const auto& mult = f.grid.waves().k2s(s);
  for (std::size_t i = 0; i < spec.size(); ++i) spec[i] *= mult[i];
  Field out(f.grid);
  out.values = inverse(f.grid, spec);
  return out;
}

Field laplacian(const Field& f) {
  auto spec = forward(f.grid, f.values);
  const auto& k2 = f.grid.waves().k2();
  for (std::size_t i = 0; i < spec.size(); ++i) spec[i] *= -k2[i];
  Field out(f.grid);
  out.values = inverse(f.grid, spec);
  return out;
}

VectorField gradient(const Field& f) {
  const Grid& grid = f.grid;
  const auto& waves = grid.waves();
  const auto base = forward(grid, f.values);

  VectorField out(grid);
  std::vector<std::complex<double>> comp(base.size());
  const int n = grid.n();
  for (int d = 0; d < grid.dim(); ++d) {
    // Stride of axis d in the row-major flat index.
    std::size_t stride = 1;
    for (int dd = grid.dim() - 1; dd > d; --dd)
      stride *= static_cast<std::size_t>(n);
    for (std::size_t i = 0; i < base.size(); ++i) {
      const int m = static_cast<int>((i / stride) % static_cast<std::size_t>(n));
      const double k = waves.k_deriv(m);
      comp[i] = std::complex<double>(0.0, k) * base[i];
    }
    out.comps[static_cast<std::size_t>(d)].values = inverse(grid, comp);
  }
  return out;
}

Field divergence(const VectorField& v) {
  const Grid& grid = v.grid;
  const auto& waves = grid.waves();
  const int n = grid.n();
  std::vector<std::complex<double>> acc(grid.size(), {0.0, 0.0});
  for (int d = 0; d < grid.dim(); ++d) {
    const auto spec = forward(grid, v.comps[static_cast<std::size_t>(d)].values);
    std::size_t stride = 1;
    for (int dd = grid.dim() - 1; dd > d; --dd)
      stride *= static_cast<std::size_t>(n);
    for (std::size_t i = 0; i < acc.size(); ++i) {
      const int m = static_cast<int>((i / stride) % static_cast<std::size_t>(n));
      acc[i] += std::complex<double>(0.0, waves.k_deriv(m)) * spec[i];
    }
  }
  Field out(grid);
  out.values = inverse(grid, acc);
  return out;
}

double frac_sobolev_seminorm(const Field& p, double s) {
  require_s_range(s);
  const auto spec = forward(p.grid, p.values);
  const auto& k2s = p.grid.waves().k2s(s);
  const auto& k2d = p.grid.waves().k2_deriv();
  double sum = 0.0;
  for (std::size_t i = 0; i < spec.size(); ++i)
    sum += k2s[i] * k2d[i] * std::norm(spec[i]);
  return sum * parseval_weight(p.grid);
}

}  // namespace fpme::spectral
