#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fpme/config.hpp"
#include "fpme/runner.hpp"
#include "fpme/snapshot.hpp"
#include "oracle.hpp"

using namespace fpme;
using namespace fpme::testing;

namespace {

std::filesystem::path temp_file(const char* name) {
  return std::filesystem::temp_directory_path() / name;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

const char* kFullConfig =
    "# full example\n"
    "dim = 2\n"
    "n = 32\n"
    "length = 12.5\n"
    "s = 0.8\n"
    "t_end = 2.5\n"
    "cfl_safety = 0.3\n"
    "dt_max = 0.05\n"
    "sample_every = 4\n"
    "snapshot_every = 2\n"
    "mode = truncation\n"
    "splitting = lie\n"
    "u0 = gaussian 1.5 0.7 3 4\n"
    "p0 = cosine 2 0.5 3\n"
    "output = results\n"
    "seed = 99\n";

}  // namespace

TEST_CASE("parse_config reads a full file") {
  const RunConfig cfg = parse_config(kFullConfig);
  CHECK(cfg.params.grid.dim() == 2);
  CHECK(cfg.params.grid.n() == 32);
  CHECK(cfg.params.grid.length() == 12.5);
  CHECK(cfg.params.s == 0.8);
  CHECK(cfg.params.t_end == 2.5);
  CHECK(cfg.params.cfl_safety == 0.3);
  CHECK(cfg.stepper.cfl_safety == 0.3);
  CHECK(cfg.params.dt_max == 0.05);
  CHECK(cfg.params.sample_every == 4);
  CHECK(cfg.snapshot_every == 2);
  CHECK(cfg.params.mode == Mode::truncation);
  CHECK(cfg.stepper.splitting == Splitting::lie);
  CHECK(cfg.output_dir == "results");
  CHECK(cfg.seed == 99);

  const auto* g = std::get_if<GaussianBump>(&cfg.init.u0);
  REQUIRE(g != nullptr);
  CHECK(g->amplitude == 1.5);
  CHECK(g->width == 0.7);
  REQUIRE(g->center.has_value());
  CHECK((*g->center)[0] == 3.0);
  CHECK((*g->center)[1] == 4.0);

  const auto* c = std::get_if<CosinePerturbation>(&cfg.init.p0);
  REQUIRE(c != nullptr);
  CHECK(c->base == 2.0);
  CHECK(c->amplitude == 0.5);
  CHECK(c->mode == 3);
}

TEST_CASE("parse_config applies defaults") {
  const RunConfig cfg = parse_config("dim=1\nn=16\nlength=5\ns=0.75\n");
  CHECK(cfg.params.cfl_safety == 0.4);
  CHECK(cfg.params.sample_every == 1);
  CHECK(cfg.params.mode == Mode::torus);
  CHECK(cfg.stepper.splitting == Splitting::strang);
  CHECK(cfg.snapshot_every == 0);
  CHECK(cfg.output_dir == "out");
  CHECK(std::holds_alternative<ZeroInit>(cfg.init.u0));
  CHECK(std::holds_alternative<ZeroInit>(cfg.init.p0));
}

TEST_CASE("parse_config rejects bad input with line numbers") {
  try {
    parse_config("dim=1\nn=16\nlength=5\ns=0.4\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.line == 4);
    CHECK(std::string(e.what()).find("(1/2, 1]") != std::string::npos);
  }

  try {
    parse_config("bogus=3\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.line == 1);
    CHECK(std::string(e.what()).find("unknown-key") != std::string::npos);
  }

  try {
    parse_config("dim=1\ndim=2\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.line == 2);
    CHECK(std::string(e.what()).find("duplicate") != std::string::npos);
  }

  // Grid errors are pinned to the n line.
  try {
    parse_config("dim=1\nlength=5\ns=0.75\nn=7\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.line == 4);
    CHECK(std::string(e.what()).find("invalid-size") != std::string::npos);
  }

  CHECK_THROWS_AS(parse_config("dim=1\nn=16\n"), ConfigError);  // missing keys
  CHECK_THROWS_AS(parse_config("dim=1 n=16\n"), ConfigError);   // no '='
  CHECK_THROWS_AS(
      parse_config("dim=1\nn=16\nlength=5\ns=0.75\nt_end=-1\n"), ConfigError);
  CHECK_THROWS_AS(
      parse_config("dim=1\nn=16\nlength=5\ns=0.75\nu0=gaussian -1 1\n"),
      ConfigError);
  CHECK_THROWS_AS(
      parse_config("dim=1\nn=16\nlength=5\ns=0.75\nu0=blob 1\n"), ConfigError);
  CHECK_THROWS_AS(
      parse_config("dim=1\nn=16\nlength=5\ns=0.75\nmode=open\n"), ConfigError);
  CHECK_THROWS_AS(
      parse_config("dim=1\nn=16\nlength=5\ns=abc\n"), ConfigError);
}

TEST_CASE("load_config reads files and reports io errors") {
  const auto path = temp_file("fpme_cfg_test.cfg");
  {
    std::ofstream out(path);
    out << "dim=1\nn=16\nlength=5\ns=0.75\nt_end=0.25\n";
  }
  const RunConfig cfg = load_config(path.string());
  CHECK(cfg.params.t_end == 0.25);
  std::filesystem::remove(path);

  CHECK_THROWS_WITH_AS(load_config("/nonexistent/fpme.cfg"),
                       doctest::Contains("io-error"), std::runtime_error);
}

TEST_CASE("snapshot round trip is bit-identical") {
  const Grid g = make_grid(2, 16, 7.0);
  State state;
  state.u = random_field(g, 31);
  state.p = random_field(g, 32);
  state.t = 1.375;

  const auto path = temp_file("fpme_rt.snap");
  write_snapshot(state, 0.8, path.string());
  const SnapshotData back = read_snapshot(path.string());
  CHECK(back.s == 0.8);
  CHECK(back.state.t == 1.375);
  CHECK(back.state.u.grid == g);
  CHECK(back.state.u.values == state.u.values);
  CHECK(back.state.p.values == state.p.values);

  // Rewriting the reread state reproduces the file byte for byte.
  const auto path2 = temp_file("fpme_rt2.snap");
  write_snapshot(back.state, back.s, path2.string());
  CHECK(slurp(path) == slurp(path2));
  std::filesystem::remove(path);
  std::filesystem::remove(path2);
}

TEST_CASE("snapshot header is the documented ASCII layout") {
  const Grid g = make_grid(1, 8, 2.0);
  State state;
  state.u = Field(g, 0.0);
  state.p = Field(g, 0.0);
  const auto path = temp_file("fpme_hdr.snap");
  write_snapshot(state, 0.75, path.string());
  const std::string bytes = slurp(path);
  CHECK(bytes.rfind("FPME1\ndim=1\nn=8\nlength=2\ns=0.75\nt=0\nfield=u\n\n",
                    0) == 0);
  // Two sections of 8 doubles each plus two identical headers.
  const std::string header =
      "FPME1\ndim=1\nn=8\nlength=2\ns=0.75\nt=0\nfield=u\n\n";
  CHECK(bytes.size() == 2 * (header.size() + 64));
  std::filesystem::remove(path);
}

TEST_CASE("snapshot read errors") {
  const auto path = temp_file("fpme_bad.snap");

  {
    std::ofstream out(path, std::ios::binary);
    out << "NOPE!\n";
  }
  CHECK_THROWS_WITH_AS(read_snapshot(path.string()),
                       doctest::Contains("malformed-header"),
                       std::runtime_error);

  const Grid g = make_grid(1, 8, 3.0);
  State state;
  state.u = random_field(g, 40);
  state.p = random_field(g, 41);
  write_snapshot(state, 0.75, path.string());
  const std::string full = slurp(path);
  {
    std::ofstream out(path, std::ios::binary);
    out.write(full.data(), static_cast<std::streamsize>(full.size() - 10));
  }
  CHECK_THROWS_WITH_AS(read_snapshot(path.string()),
                       doctest::Contains("truncated-payload"),
                       std::runtime_error);
  std::filesystem::remove(path);

  CHECK_THROWS_WITH_AS(read_snapshot("/nonexistent/fpme.snap"),
                       doctest::Contains("io-error"), std::runtime_error);
}

TEST_CASE("simulate is deterministic across repeated runs") {
  Params params;
  params.grid = make_grid(1, 64, 10.0);
  params.s = 0.75;
  params.t_end = 0.5;
  params.dt_max = 0.02;
  InitialData init;
  init.u0 = GaussianBump{0.7, 1.2, {}};
  init.p0 = CosinePerturbation{1.0, 0.3, 2};

  const auto a = simulate(params, init);
  const auto b = simulate(params, init);
  REQUIRE(a.records.size() == b.records.size());
  CHECK(a.final_state.u.values == b.final_state.u.values);
  CHECK(a.final_state.p.values == b.final_state.p.values);
  for (std::size_t i = 0; i < a.records.size(); ++i)
    CHECK(diagnostics_csv_row(a.records[i]) ==
          diagnostics_csv_row(b.records[i]));

  // Snapshots of the two runs are byte-identical.
  const auto pa = temp_file("fpme_det_a.snap");
  const auto pb = temp_file("fpme_det_b.snap");
  write_snapshot(a.final_state, params.s, pa.string());
  write_snapshot(b.final_state, params.s, pb.string());
  CHECK(slurp(pa) == slurp(pb));
  std::filesystem::remove(pa);
  std::filesystem::remove(pb);
}
