#include "fpme/selfcheck.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "fpme/diagnostics.hpp"
#include "fpme/runner.hpp"
#include "fpme/spectral.hpp"
#include "fpme/stepper.hpp"

namespace fpme {

namespace {

// Dense-DFT reference path, deliberately independent of the FFT-based
// operators: plain O(N^2) transforms with explicitly applied multipliers.
std::vector<std::complex<double>> naive_forward(const Grid& grid,
                                                const std::vector<double>& f) {
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

std::vector<double> naive_inverse(const Grid& grid,
                                  const std::vector<std::complex<double>>& F) {
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

std::vector<double> dense_apply(
    const Grid& grid, const std::vector<double>& f,
    const std::function<std::complex<double>(std::size_t)>& multiplier) {
  auto F = naive_forward(grid, f);
  for (std::size_t k = 0; k < F.size(); ++k) F[k] *= multiplier(k);
  return naive_inverse(grid, F);
}

Field random_field(const Grid& grid, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Field f(grid);
  for (auto& v : f.values) v = dist(rng);
  return f;
}

double max_abs_diff(const std::vector<double>& a,
                    const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

struct Checker {
  std::ostream& out;
  bool ok = true;
  void report(const char* name, bool pass, double value) {
    out << (pass ? "[ ok ] " : "[FAIL] ") << name << " (" << value << ")\n";
    ok = ok && pass;
  }
};

void check_dense_operators(Checker& chk, const Grid& grid,
                           std::mt19937_64& rng, const char* tag) {
  const double s = 0.8;
  const Field f = random_field(grid, rng);
  const auto& waves = grid.waves();
  const auto& k2s = waves.k2s(s);

  const Field got_frac = spectral::frac_laplacian(f, s);
  const auto want_frac = dense_apply(
      grid, f.values, [&](std::size_t k) { return k2s[k]; });
  chk.report((std::string("dense oracle: frac_laplacian ") + tag).c_str(),
             max_abs_diff(got_frac.values, want_frac) <= 1e-10,
             max_abs_diff(got_frac.values, want_frac));

  const VectorField grad = spectral::gradient(f);
  double worst = 0.0;
  for (int d = 0; d < grid.dim(); ++d) {
    std::size_t stride = 1;
    for (int dd = grid.dim() - 1; dd > d; --dd)
      stride *= static_cast<std::size_t>(grid.n());
    const auto want = dense_apply(grid, f.values, [&](std::size_t k) {
      const int m =
          static_cast<int>((k / stride) % static_cast<std::size_t>(grid.n()));
      return std::complex<double>(0.0, waves.k_deriv(m));
    });
    worst = std::max(
        worst,
        max_abs_diff(grad.comps[static_cast<std::size_t>(d)].values, want));
  }
  chk.report((std::string("dense oracle: gradient ") + tag).c_str(),
             worst <= 1e-10, worst);

  VectorField v(grid);
  for (auto& comp : v.comps) comp = random_field(grid, rng);
  const Field got_div = spectral::divergence(v);
  std::vector<double> want_div(grid.size(), 0.0);
  for (int d = 0; d < grid.dim(); ++d) {
    std::size_t stride = 1;
    for (int dd = grid.dim() - 1; dd > d; --dd)
      stride *= static_cast<std::size_t>(grid.n());
    const auto part = dense_apply(
        grid, v.comps[static_cast<std::size_t>(d)].values,
        [&](std::size_t k) {
          const int m = static_cast<int>((k / stride) %
                                         static_cast<std::size_t>(grid.n()));
          return std::complex<double>(0.0, waves.k_deriv(m));
        });
    for (std::size_t i = 0; i < want_div.size(); ++i) want_div[i] += part[i];
  }
  chk.report((std::string("dense oracle: divergence ") + tag).c_str(),
             max_abs_diff(got_div.values, want_div) <= 1e-10,
             max_abs_diff(got_div.values, want_div));
}

}  // namespace

bool run_self_check(std::ostream& out, unsigned long long seed) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  Checker chk{out};

  const Grid g1 = make_grid(1, 16, 2.0 * std::numbers::pi);
  const Grid g2 = make_grid(2, 16, 3.0);
  check_dense_operators(chk, g1, rng, "1d");
  check_dense_operators(chk, g2, rng, "2d");

  {  // Parseval and round trip.
    const Field f = random_field(g2, rng);
    const auto spec = spectral::forward(g2, f.values);
    double sum = 0.0;
    for (const auto& c : spec) sum += std::norm(c);
    const double spectral_sum = sum * spectral::parseval_weight(g2);
    const double quad = l2_squared(f);
    const double rel = std::abs(spectral_sum - quad) / quad;
    chk.report("parseval consistency", rel <= 1e-12, rel);

    const auto back = spectral::inverse(g2, spec);
    double err = max_abs_diff(back, f.values) / max_abs(f);
    chk.report("transform round trip", err <= 1e-12, err);
  }

  {  // s = 1 reduces to the spectral Laplacian.
    const Field f = random_field(g2, rng);
    const Field a = spectral::frac_laplacian(f, 1.0);
    Field b = spectral::laplacian(f);
    for (auto& v : b.values) v = -v;
    const double rel = max_abs_diff(a.values, b.values) / (max_abs(a) + 1e-300);
    chk.report("frac_laplacian(s=1) == -laplacian", rel <= 1e-12, rel);
  }

  {  // Conservation and positivity on a short nonlinear run.
    Params params;
    params.grid = make_grid(1, 64, 10.0);
    params.s = 0.75;
    params.t_end = 0.5;
    params.dt_max = 1e-3;
    InitialData init;
    init.u0 = GaussianBump{1.0, 1.0, {}};
    const auto res = simulate(params, init);
    const double m0 = res.records.front().mass;
    double drift = 0.0, umin = 0.0;
    for (const auto& r : res.records)
      drift = std::max(drift, std::abs(r.mass - m0) / m0);
    umin = min_value(res.final_state.u);
    chk.report("mass conservation", drift <= 1e-12, drift);
    chk.report("positivity", umin >= 0.0, umin);
  }

  {  // Homogeneous state: u stays constant, mean(p) grows at rate c^2.
    Params params;
    params.grid = make_grid(1, 32, 4.0);
    params.s = 0.75;
    params.t_end = 0.25;
    params.dt_max = 0.05;
    const double c = 0.7;
    State state;
    state.u = Field(params.grid, c);
    state.p = Field(params.grid, 0.3);
    const auto res = simulate_state(state, params);
    double udev = 0.0;
    for (double v : res.final_state.u.values) udev = std::max(udev, std::abs(v - c));
    const double want_mean = 0.3 + c * c * params.t_end;
    const double mean_err =
        std::abs(mean(res.final_state.p) - want_mean) / want_mean;
    chk.report("homogeneous: u constant", udev <= 1e-13, udev);
    chk.report("homogeneous: mean(p) balance", mean_err <= 1e-10, mean_err);
  }

  out << (chk.ok ? "self-check passed\n" : "self-check FAILED\n");
  return chk.ok;
}

}  // namespace fpme
