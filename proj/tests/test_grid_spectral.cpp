#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fpme/spectral.hpp"
#include "oracle.hpp"

using namespace fpme;
using namespace fpme::testing;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("make_grid derives spacing and wavenumbers") {
  const Grid g = make_grid(1, 8, 2.0 * kPi);
  CHECK(g.spacing() == doctest::Approx(2.0 * kPi / 8).epsilon(1e-15));
  CHECK(g.waves().k_axis(0) == 0.0);
  CHECK(g.waves().k_axis(1) == doctest::Approx(1.0).epsilon(1e-15));

  const Grid g3 = make_grid(3, 64, 50.0);
  CHECK(g3.size() == 262144);
  CHECK(g3.waves().k_axis(1) == doctest::Approx(2.0 * kPi / 50.0));
}

TEST_CASE("make_grid rejects bad arguments") {
  CHECK_THROWS_WITH_AS(make_grid(2, 7, 1.0),
                       doctest::Contains("invalid-size"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(make_grid(4, 16, 1.0),
                       doctest::Contains("invalid-dimension"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(make_grid(1, 16, 0.0),
                       doctest::Contains("nonpositive-length"),
                       std::invalid_argument);
  CHECK_THROWS_AS(make_grid(1, 4, 1.0), std::invalid_argument);
}

TEST_CASE("wavenumber table is symmetric in |k|-derived entries") {
  const Grid g = make_grid(1, 16, 3.0);
  const auto& w = g.waves();
  CHECK(w.k2()[0] == 0.0);
  for (int m = 1; m < 8; ++m)
    CHECK(w.k2()[static_cast<std::size_t>(m)] ==
          doctest::Approx(w.k2()[static_cast<std::size_t>(16 - m)])
              .epsilon(1e-15));
}

TEST_CASE("frac_laplacian annihilates constants and rejects bad s") {
  const Grid g = make_grid(2, 16, 5.0);
  const Field c(g, 3.7);
  const Field out = spectral::frac_laplacian(c, 0.75);
  CHECK(max_abs(out) <= 1e-13);
  CHECK_THROWS_AS(spectral::frac_laplacian(c, 0.5), std::domain_error);
  CHECK_THROWS_AS(spectral::frac_laplacian(c, 1.2), std::domain_error);
}

TEST_CASE("frac_laplacian eigenfunction: cos(k0 x)") {
  const Grid g = make_grid(1, 32, 2.0 * kPi);
  const double s = 0.8;
  const double k0 = 3.0;
  Field f(g);
  for (int i = 0; i < 32; ++i) f.values[static_cast<std::size_t>(i)] =
      std::cos(k0 * g.coord(i));
  const Field out = spectral::frac_laplacian(f, s);
  const double factor = std::pow(k0 * k0, s);
  for (int i = 0; i < 32; ++i)
    CHECK(out.values[static_cast<std::size_t>(i)] ==
          doctest::Approx(factor * f.values[static_cast<std::size_t>(i)])
              .epsilon(1e-12));
}

TEST_CASE("frac_laplacian at s=1 equals the spectral Laplacian") {
  const Grid g = make_grid(2, 16, 4.0);
  const Field f = random_field(g, 11);
  const Field a = spectral::frac_laplacian(f, 1.0);
  Field b = spectral::laplacian(f);
  for (auto& v : b.values) v = -v;
  CHECK(max_abs_diff(a.values, b.values) <= 1e-12 * max_abs(a));
}

TEST_CASE("operators match the dense DFT oracle (n = 16)") {
  for (int dim : {1, 2}) {
    const Grid g = make_grid(dim, 16, 3.0);
    const Field f = random_field(g, 100 + static_cast<unsigned>(dim));
    const auto& waves = g.waves();

    const double s = 0.75;
    const auto& k2s = waves.k2s(s);
    const auto want_frac =
        dense_apply(g, f.values, [&](std::size_t k) { return k2s[k]; });
    CHECK(max_abs_diff(spectral::frac_laplacian(f, s).values, want_frac) <=
          1e-10);

    const VectorField grad = spectral::gradient(f);
    for (int d = 0; d < dim; ++d) {
      const std::size_t stride = axis_stride(g, d);
      const auto want = dense_apply(g, f.values, [&](std::size_t k) {
        const int m =
            static_cast<int>((k / stride) % static_cast<std::size_t>(16));
        return std::complex<double>(0.0, waves.k_deriv(m));
      });
      CHECK(max_abs_diff(grad.comps[static_cast<std::size_t>(d)].values,
                         want) <= 1e-10);
    }

    VectorField v(g);
    for (int d = 0; d < dim; ++d)
      v.comps[static_cast<std::size_t>(d)] =
          random_field(g, 200 + static_cast<unsigned>(10 * dim + d));
    const Field div = spectral::divergence(v);
    std::vector<double> want_div(g.size(), 0.0);
    for (int d = 0; d < dim; ++d) {
      const std::size_t stride = axis_stride(g, d);
      const auto part = dense_apply(
          g, v.comps[static_cast<std::size_t>(d)].values, [&](std::size_t k) {
            const int m =
                static_cast<int>((k / stride) % static_cast<std::size_t>(16));
            return std::complex<double>(0.0, waves.k_deriv(m));
          });
      for (std::size_t i = 0; i < want_div.size(); ++i) want_div[i] += part[i];
    }
    CHECK(max_abs_diff(div.values, want_div) <= 1e-10);
  }
}

TEST_CASE("gradient of sin(x) is cos(x), mean zero, constant maps to zero") {
  const Grid g = make_grid(1, 64, 2.0 * kPi);
  Field f(g);
  for (int i = 0; i < 64; ++i)
    f.values[static_cast<std::size_t>(i)] = std::sin(g.coord(i));
  const auto grad = spectral::gradient(f);
  for (int i = 0; i < 64; ++i)
    CHECK(grad.comps[0].values[static_cast<std::size_t>(i)] ==
          doctest::Approx(std::cos(g.coord(i))).epsilon(1e-12));
  CHECK(std::abs(mean(grad.comps[0])) <= 1e-14);

  const auto gzero = spectral::gradient(Field(g, 2.5));
  CHECK(max_abs(gzero.comps[0]) <= 1e-13);
}

TEST_CASE("divergence of a gradient is the spectral Laplacian") {
  const Grid g = make_grid(2, 32, 7.0);
  // Smooth field: no Nyquist content, so the odd-derivative composition
  // agrees with the even multiplier.
  Field f(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto idx = g.unflatten(i);
    f.values[i] = std::sin(2.0 * kPi * g.coord(idx[0]) / g.length()) +
                  0.5 * std::cos(4.0 * kPi * g.coord(idx[1]) / g.length());
  }
  const Field lap = spectral::laplacian(f);
  const Field div_grad = spectral::divergence(spectral::gradient(f));
  CHECK(max_abs_diff(lap.values, div_grad.values) <= 1e-11);
  CHECK(std::abs(mean(div_grad)) <= 1e-14);

  VectorField c(g);
  for (auto& comp : c.comps) comp = Field(g, 1.3);
  CHECK(max_abs(spectral::divergence(c)) <= 1e-13);
}

TEST_CASE("frac_sobolev_seminorm: analytic value and dual routes") {
  const Grid g = make_grid(1, 64, 2.0 * kPi);
  CHECK(spectral::frac_sobolev_seminorm(Field(g, 4.0), 0.75) == 0.0);

  Field p(g);
  for (int i = 0; i < 64; ++i)
    p.values[static_cast<std::size_t>(i)] = std::cos(g.coord(i));
  CHECK(spectral::frac_sobolev_seminorm(p, 1.0) ==
        doctest::Approx(kPi).epsilon(1e-12));

  // Spatial route: apply the half-operator |k|^s to each gradient component
  // and integrate in physical space.
  const double s = 0.75;
  const Field pr = random_field(g, 42);
  const auto grad = spectral::gradient(pr);
  double spatial = 0.0;
  const auto& k2 = g.waves().k2();
  for (const auto& comp : grad.comps) {
    auto spec = spectral::forward(g, comp.values);
    for (std::size_t k = 0; k < spec.size(); ++k)
      spec[k] *= std::pow(k2[k], 0.5 * s);
    Field half(g);
    half.values = spectral::inverse(g, spec);
    spatial += l2_squared(half);
  }
  const double direct = spectral::frac_sobolev_seminorm(pr, s);
  CHECK(direct == doctest::Approx(spatial).epsilon(1e-10));
  CHECK(direct >= 0.0);
}

TEST_CASE("round trip, Parseval and realness on random fields") {
  for (int dim : {1, 2, 3}) {
    const Grid g = make_grid(dim, 16, 2.0 + dim);
    const Field f = random_field(g, 300 + static_cast<unsigned>(dim));
    const auto spec = spectral::forward(g, f.values);
    const auto back = spectral::inverse(g, spec);
    CHECK(max_abs_diff(back, f.values) <= 1e-12 * max_abs(f));

    double sum = 0.0;
    for (const auto& c : spec) sum += std::norm(c);
    CHECK(sum * spectral::parseval_weight(g) ==
          doctest::Approx(l2_squared(f)).epsilon(1e-12));

    for (double v : spectral::frac_laplacian(f, 0.9).values)
      CHECK(std::isfinite(v));
  }
}

TEST_CASE("multiplier operators commute") {
  const Grid g = make_grid(2, 16, 5.0);
  const Field f = random_field(g, 7);
  const double s = 0.8;
  const auto a = spectral::gradient(spectral::frac_laplacian(f, s));
  const auto grad_f = spectral::gradient(f);
  for (int d = 0; d < 2; ++d) {
    const auto c = spectral::frac_laplacian(
        grad_f.comps[static_cast<std::size_t>(d)], s);
    const double scale = max_abs(c) + 1e-300;
    CHECK(max_abs_diff(a.comps[static_cast<std::size_t>(d)].values,
                       c.values) <= 1e-12 * scale);
  }
}
