#include "fpme/model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fpme/snapshot.hpp"
#include "fpme/spectral.hpp"

namespace fpme {

void Params::validate() const {
  spectral::require_s_range(s);
  if (grid.size() == 0) throw std::invalid_argument("params: grid not set");
  if (!(cfl_safety > 0.0) || cfl_safety > 1.0)
    throw std::invalid_argument("params: cfl_safety must be in (0, 1]");
  if (!(dt_max > 0.0)) throw std::invalid_argument("params: dt_max must be > 0");
  if (!(t_end >= 0.0)) throw std::invalid_argument("params: t_end must be >= 0");
  if (sample_every < 1)
    throw std::invalid_argument("params: sample_every must be >= 1");
}

namespace {

std::array<double, 3> box_center(const Grid& grid) {
  std::array<double, 3> c{0, 0, 0};
  for (int d = 0; d < grid.dim(); ++d)
    c[static_cast<std::size_t>(d)] = 0.5 * grid.length();
  return c;
}

Field generate(const FieldInit& init, const Grid& grid, bool is_u) {
  Field f(grid);
  if (std::holds_alternative<ZeroInit>(init)) return f;

  if (const auto* g = std::get_if<GaussianBump>(&init)) {
    if (g->amplitude < 0.0)
      throw std::invalid_argument("negative-amplitude: gaussian amplitude");
    if (!(g->width > 0.0))
      throw std::invalid_argument("gaussian width must be > 0");
    const auto c = g->center.value_or(box_center(grid));
    const double inv2w2 = 1.0 / (2.0 * g->width * g->width);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const auto idx = grid.unflatten(i);
      double r2 = 0.0;
      for (int d = 0; d < grid.dim(); ++d) {
        double dx = grid.coord(idx[static_cast<std::size_t>(d)]) -
                    c[static_cast<std::size_t>(d)];
        // Nearest periodic image.
        dx -= grid.length() * std::round(dx / grid.length());
        r2 += dx * dx;
      }
      f.values[i] = g->amplitude * std::exp(-r2 * inv2w2);
    }
    return f;
  }

  if (const auto* cp = std::get_if<CosinePerturbation>(&init)) {
    if (cp->amplitude < 0.0)
      throw std::invalid_argument("negative-amplitude: cosine amplitude");
    if (cp->base < cp->amplitude)
      throw std::invalid_argument(
          "negative-amplitude: cosine base below amplitude gives negative data");
    const double w = 2.0 * std::numbers::pi * cp->mode / grid.length();
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const auto idx = grid.unflatten(i);
      double prod = 1.0;
      for (int d = 0; d < grid.dim(); ++d)
        prod *= std::cos(w * grid.coord(idx[static_cast<std::size_t>(d)]));
      f.values[i] = cp->base + cp->amplitude * prod;
    }
    return f;
  }

  const auto& snap = std::get<FromSnapshot>(init);
  SnapshotData data = read_snapshot(snap.path);
  const Field& src = is_u ? data.state.u : data.state.p;
  if (!(src.grid == grid))
    throw std::invalid_argument("snapshot-grid-mismatch: " + snap.path);
  return src;
}

}  // namespace

State make_initial(const InitialData& spec, const Grid& grid) {
  State state;
  state.u = generate(spec.u0, grid, true);
  state.p = generate(spec.p0, grid, false);
  state.t = 0.0;
  return state;
}

bool AdmissibilityReport::all_pass() const {
  for (const auto& e : entries)
    if (!e.pass) return false;
  return true;
}

AdmissibilityReport admissibility_report(const State& state,
                                         const Params& params) {
  AdmissibilityReport rep;
  const bool u_finite = all_finite(state.u);
  const bool p_finite = all_finite(state.p);
  rep.entries.push_back({"u_finite", u_finite ? 1.0 : 0.0, u_finite});
  rep.entries.push_back({"p_finite", p_finite ? 1.0 : 0.0, p_finite});
  if (!u_finite || !p_finite) return rep;

  const double u2 = l2_squared(state.u);
  rep.entries.push_back({"u_l2sq", u2, std::isfinite(u2)});
  const auto grad_p = spectral::gradient(state.p);
  double gp2 = 0.0;
  for (const auto& c : grad_p.comps) gp2 += l2_squared(c);
  rep.entries.push_back({"grad_p_l2sq", gp2, std::isfinite(gp2)});
  const double m = mass(state.u);
  rep.entries.push_back({"mass", m, std::isfinite(m) && m >= 0.0});

  if (params.mode == Mode::truncation) {
    const auto c = box_center(state.u.grid);
    double wm = 0.0;
    const Grid& grid = state.u.grid;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const auto idx = grid.unflatten(i);
      double r2 = 0.0;
      for (int d = 0; d < grid.dim(); ++d) {
        const double dx = grid.coord(idx[static_cast<std::size_t>(d)]) -
                          c[static_cast<std::size_t>(d)];
        r2 += dx * dx;
      }
      wm += state.u.values[i] * std::sqrt(1.0 + r2);
    }
    wm *= grid.cell_volume();
    rep.entries.push_back({"weighted_mass", wm, std::isfinite(wm)});
  }
  return rep;
}

double boundary_mass_fraction(const Field& u) {
  const Grid& grid = u.grid;
  // Outermost 10% shell: points whose distance to the nearest wall is
  // below 5% of the box length on any axis.
  const double margin = 0.05 * grid.length();
  double shell = 0.0, total = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double v = u.values[i];
    total += v;
    const auto idx = grid.unflatten(i);
    for (int d = 0; d < grid.dim(); ++d) {
      const double x = grid.coord(idx[static_cast<std::size_t>(d)]);
      if (x < margin || grid.length() - x < margin) {
        shell += v;
        break;
      }
    }
  }
  return total > 0.0 ? shell / total : 0.0;
}

}  // namespace fpme
