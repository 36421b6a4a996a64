#include "fpme/config.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace fpme {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

double to_real(const std::string& v, int line) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError(line, "parse-error: expected a number, got '" + v + "'");
  }
}

long long to_int(const std::string& v, int line) {
  try {
    std::size_t pos = 0;
    const long long x = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError(line, "parse-error: expected an integer, got '" + v + "'");
  }
}

FieldInit parse_field_init(const std::string& value, int line) {
  const auto words = split_words(value);
  if (words.empty())
    throw ConfigError(line, "parse-error: empty initial-data spec");
  const std::string& kind = words[0];
  if (kind == "zero") {
    if (words.size() != 1)
      throw ConfigError(line, "parse-error: zero takes no arguments");
    return ZeroInit{};
  }
  if (kind == "gaussian") {
    if (words.size() != 3 && words.size() < 4)
      throw ConfigError(
          line, "parse-error: gaussian <amplitude> <width> [<center...>]");
    GaussianBump g;
    g.amplitude = to_real(words[1], line);
    g.width = to_real(words[2], line);
    if (words.size() > 3) {
      if (words.size() > 6)
        throw ConfigError(line, "parse-error: too many center components");
      std::array<double, 3> c{0, 0, 0};
      for (std::size_t i = 3; i < words.size(); ++i)
        c[i - 3] = to_real(words[i], line);
      g.center = c;
    }
    if (g.amplitude < 0.0)
      throw ConfigError(line, "constraint-violation: negative-amplitude");
    return g;
  }
  if (kind == "cosine") {
    if (words.size() != 4)
      throw ConfigError(line, "parse-error: cosine <base> <amplitude> <mode>");
    CosinePerturbation c;
    c.base = to_real(words[1], line);
    c.amplitude = to_real(words[2], line);
    c.mode = static_cast<int>(to_int(words[3], line));
    if (c.amplitude < 0.0)
      throw ConfigError(line, "constraint-violation: negative-amplitude");
    return c;
  }
  if (kind == "snapshot") {
    if (words.size() != 2)
      throw ConfigError(line, "parse-error: snapshot <path>");
    return FromSnapshot{words[1]};
  }
  throw ConfigError(line, "parse-error: unknown generator '" + kind + "'");
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  int dim = 0, n = 0;
  double length = 0.0;
  bool have_dim = false, have_n = false, have_length = false, have_s = false;
  std::map<std::string, int> key_line;

  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string stripped = trim(raw);
    if (stripped.empty()) continue;

    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw ConfigError(line, "parse-error: expected 'key = value'");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError(line, "parse-error: expected 'key = value'");
    if (key_line.count(key))
      throw ConfigError(line, "parse-error: duplicate key '" + key + "'");
    key_line[key] = line;

    if (key == "dim") {
      dim = static_cast<int>(to_int(value, line));
      have_dim = true;
    } else if (key == "n") {
      n = static_cast<int>(to_int(value, line));
      have_n = true;
    } else if (key == "length") {
      length = to_real(value, line);
      have_length = true;
    } else if (key == "s") {
      cfg.params.s = to_real(value, line);
      have_s = true;
      if (!(cfg.params.s > 0.5) || !(cfg.params.s <= 1.0))
        throw ConfigError(line,
                          "constraint-violation: s must be in (1/2, 1] "
                          "(admissible fractional-order range)");
    } else if (key == "t_end") {
      cfg.params.t_end = to_real(value, line);
      if (!(cfg.params.t_end >= 0.0))
        throw ConfigError(line, "constraint-violation: t_end must be >= 0");
    } else if (key == "cfl_safety") {
      cfg.params.cfl_safety = to_real(value, line);
      if (!(cfg.params.cfl_safety > 0.0) || cfg.params.cfl_safety > 1.0)
        throw ConfigError(line,
                          "constraint-violation: cfl_safety must be in (0, 1]");
      cfg.stepper.cfl_safety = cfg.params.cfl_safety;
    } else if (key == "dt_max") {
      cfg.params.dt_max = to_real(value, line);
      if (!(cfg.params.dt_max > 0.0))
        throw ConfigError(line, "constraint-violation: dt_max must be > 0");
    } else if (key == "sample_every") {
      cfg.params.sample_every = static_cast<int>(to_int(value, line));
      if (cfg.params.sample_every < 1)
        throw ConfigError(line,
                          "constraint-violation: sample_every must be >= 1");
    } else if (key == "snapshot_every") {
      cfg.snapshot_every = static_cast<int>(to_int(value, line));
      if (cfg.snapshot_every < 0)
        throw ConfigError(line,
                          "constraint-violation: snapshot_every must be >= 0");
    } else if (key == "mode") {
      if (value == "torus")
        cfg.params.mode = Mode::torus;
      else if (value == "truncation")
        cfg.params.mode = Mode::truncation;
      else
        throw ConfigError(line, "parse-error: mode must be torus|truncation");
    } else if (key == "splitting") {
      if (value == "strang")
        cfg.stepper.splitting = Splitting::strang;
      else if (value == "lie")
        cfg.stepper.splitting = Splitting::lie;
      else
        throw ConfigError(line, "parse-error: splitting must be lie|strang");
    } else if (key == "u0") {
      cfg.init.u0 = parse_field_init(value, line);
    } else if (key == "p0") {
      cfg.init.p0 = parse_field_init(value, line);
    } else if (key == "output") {
      cfg.output_dir = value;
    } else if (key == "seed") {
      cfg.seed = static_cast<unsigned long long>(to_int(value, line));
    } else {
      throw ConfigError(line, "unknown-key: '" + key + "'");
    }
  }

  if (!have_dim || !have_n || !have_length || !have_s)
    throw ConfigError(line, "constraint-violation: dim, n, length and s are "
                            "required keys");
  try {
    cfg.params.grid = make_grid(dim, n, length);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(key_line.count("n") ? key_line["n"] : line, e.what());
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("io-error: cannot open config " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace fpme
