#include "fpme/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fpme {

namespace {

constexpr char kMagic[] = "FPME1";

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_payload(std::ostream& out, const std::vector<double>& values) {
  std::vector<unsigned char> bytes(values.size() * 8);
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto u = std::bit_cast<std::uint64_t>(values[i]);
    for (int b = 0; b < 8; ++b)
      bytes[i * 8 + static_cast<std::size_t>(b)] =
          static_cast<unsigned char>((u >> (8 * b)) & 0xff);
  }
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

void write_section(std::ostream& out, const Field& f, double s, double t,
                   char name) {
  out << kMagic << '\n'
      << "dim=" << f.grid.dim() << '\n'
      << "n=" << f.grid.n() << '\n'
      << "length=" << format_real(f.grid.length()) << '\n'
      << "s=" << format_real(s) << '\n'
      << "t=" << format_real(t) << '\n'
      << "field=" << name << '\n'
      << '\n';
  write_payload(out, f.values);
}

struct SectionHeader {
  int dim = 0;
  int n = 0;
  double length = 0;
  double s = 0;
  double t = 0;
  char field = '?';
};

std::string read_line(std::istream& in) {
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("malformed-header: unexpected end of file");
  return line;
}

double parse_real(const std::string& v, const char* key) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw std::runtime_error(std::string("malformed-header: bad ") + key);
  }
}

SectionHeader read_header(std::istream& in) {
  if (read_line(in) != kMagic)
    throw std::runtime_error("malformed-header: bad magic");
  SectionHeader h;
  const char* keys[] = {"dim", "n", "length", "s", "t", "field"};
  for (const char* key : keys) {
    const std::string line = read_line(in);
    const std::string prefix = std::string(key) + "=";
    if (line.rfind(prefix, 0) != 0)
      throw std::runtime_error(std::string("malformed-header: expected ") +
                               key + "=");
    const std::string value = line.substr(prefix.size());
    if (std::strcmp(key, "dim") == 0)
      h.dim = static_cast<int>(parse_real(value, key));
    else if (std::strcmp(key, "n") == 0)
      h.n = static_cast<int>(parse_real(value, key));
    else if (std::strcmp(key, "length") == 0)
      h.length = parse_real(value, key);
    else if (std::strcmp(key, "s") == 0)
      h.s = parse_real(value, key);
    else if (std::strcmp(key, "t") == 0)
      h.t = parse_real(value, key);
    else
      h.field = value.size() == 1 ? value[0] : '?';
  }
  if (!read_line(in).empty())
    throw std::runtime_error("malformed-header: missing blank line");
  return h;
}

std::vector<double> read_payload(std::istream& in, std::size_t count) {
  std::vector<unsigned char> bytes(count * 8);
  in.read(reinterpret_cast<char*>(bytes.data()),
          static_cast<std::streamsize>(bytes.size()));
  if (static_cast<std::size_t>(in.gcount()) != bytes.size())
    throw std::runtime_error("truncated-payload");
  std::vector<double> values(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::uint64_t u = 0;
    for (int b = 7; b >= 0; --b)
      u = (u << 8) | bytes[i * 8 + static_cast<std::size_t>(b)];
    values[i] = std::bit_cast<double>(u);
  }
  return values;
}

}  // namespace

void write_snapshot(const State& state, double s, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("io-error: cannot open " + path);
  write_section(out, state.u, s, state.t, 'u');
  write_section(out, state.p, s, state.t, 'p');
  if (!out) throw std::runtime_error("io-error: write failed for " + path);
}

SnapshotData read_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("io-error: cannot open " + path);

  const SectionHeader hu = read_header(in);
  if (hu.field != 'u')
    throw std::runtime_error("malformed-header: expected field=u first");
  Grid grid = make_grid(hu.dim, hu.n, hu.length);
  SnapshotData data;
  data.s = hu.s;
  data.state.t = hu.t;
  data.state.u.grid = grid;
  data.state.u.values = read_payload(in, grid.size());

  const SectionHeader hp = read_header(in);
  if (hp.field != 'p' || hp.dim != hu.dim || hp.n != hu.n ||
      hp.length != hu.length || hp.s != hu.s || hp.t != hu.t)
    throw std::runtime_error("malformed-header: inconsistent p section");
  data.state.p.grid = grid;
  data.state.p.values = read_payload(in, grid.size());
  return data;
}

}  // namespace fpme
