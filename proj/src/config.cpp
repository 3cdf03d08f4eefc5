#include "relgas/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <string_view>

namespace relgas {

namespace {

std::string_view trim(std::string_view s) {
  const char* ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_value(const std::string& key, std::string_view value,
                            const std::string& what) {
  throw ConfigError("key '" + key + "': value '" + std::string(value) +
                    "' is not " + what);
}

double parse_double(const std::string& key, std::string_view v) {
  double out = 0.0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || p != v.data() + v.size())
    bad_value(key, v, "a number");
  return out;
}

int parse_int(const std::string& key, std::string_view v) {
  int out = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || p != v.data() + v.size())
    bad_value(key, v, "an integer");
  return out;
}

std::uint64_t parse_u64(const std::string& key, std::string_view v) {
  std::uint64_t out = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || p != v.data() + v.size())
    bad_value(key, v, "an unsigned integer");
  return out;
}

bool parse_bool(const std::string& key, std::string_view v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  bad_value(key, v, "a boolean (true/false/1/0)");
}

Boundary parse_boundary(const std::string& key, std::string_view v) {
  if (v == "periodic") return Boundary::periodic;
  if (v == "wall") return Boundary::wall;
  bad_value(key, v, "one of: periodic, wall");
}

EntropyProfile::Family parse_family(const std::string& key,
                                    std::string_view v) {
  using F = EntropyProfile::Family;
  if (v == "constant") return F::constant;
  if (v == "exponential") return F::exponential;
  if (v == "power") return F::power;
  bad_value(key, v, "one of: constant, exponential, power");
}

IcSpec::Preset parse_preset(const std::string& key, std::string_view v) {
  using P = IcSpec::Preset;
  if (v == "rest") return P::rest;
  if (v == "sine_displacement") return P::sine_displacement;
  if (v == "sine_velocity") return P::sine_velocity;
  if (v == "gaussian_velocity") return P::gaussian_velocity;
  if (v == "equilibrium") return P::equilibrium;
  if (v == "equilibrium_sine_velocity") return P::equilibrium_sine_velocity;
  if (v == "equilibrium_gaussian_velocity")
    return P::equilibrium_gaussian_velocity;
  bad_value(key, v,
            "one of: rest, sine_displacement, sine_velocity, "
            "gaussian_velocity, equilibrium, equilibrium_sine_velocity, "
            "equilibrium_gaussian_velocity");
}

const char* boundary_str(Boundary b) {
  return b == Boundary::periodic ? "periodic" : "wall";
}

const char* family_str(EntropyProfile::Family f) {
  switch (f) {
    case EntropyProfile::Family::constant: return "constant";
    case EntropyProfile::Family::exponential: return "exponential";
    case EntropyProfile::Family::power: return "power";
    case EntropyProfile::Family::custom: break;
  }
  return "custom";
}

const char* preset_str(IcSpec::Preset p) {
  using P = IcSpec::Preset;
  switch (p) {
    case P::rest: return "rest";
    case P::sine_displacement: return "sine_displacement";
    case P::sine_velocity: return "sine_velocity";
    case P::gaussian_velocity: return "gaussian_velocity";
    case P::equilibrium: return "equilibrium";
    case P::equilibrium_sine_velocity: return "equilibrium_sine_velocity";
    case P::equilibrium_gaussian_velocity:
      return "equilibrium_gaussian_velocity";
  }
  return "?";
}

void apply_key(RunConfig& cfg, const std::string& key, std::string_view v) {
  if (key == "gamma") cfg.gamma = parse_double(key, v);
  else if (key == "cfl") cfg.cfl = parse_double(key, v);
  else if (key == "t_end") cfg.t_end = parse_double(key, v);
  else if (key == "snapshot_stride") cfg.snapshot_stride = parse_int(key, v);
  else if (key == "eps_v") cfg.eps_v = parse_double(key, v);
  else if (key == "eps_den") cfg.eps_den = parse_double(key, v);
  else if (key == "dt_max_factor") cfg.dt_max_factor = parse_double(key, v);
  else if (key == "dt_override") {
    if (v == "none") cfg.dt_override.reset();
    else cfg.dt_override = parse_double(key, v);
  }
  else if (key == "grid_n") cfg.grid_n = parse_int(key, v);
  else if (key == "xi_min") cfg.xi_min = parse_double(key, v);
  else if (key == "xi_max") cfg.xi_max = parse_double(key, v);
  else if (key == "boundary") cfg.boundary = parse_boundary(key, v);
  else if (key == "entropy_family") cfg.entropy_family = parse_family(key, v);
  else if (key == "entropy_s0") cfg.entropy_s0 = parse_double(key, v);
  else if (key == "entropy_q") cfg.entropy_q = parse_double(key, v);
  else if (key == "ic_preset") cfg.ic_preset = parse_preset(key, v);
  else if (key == "ic_amplitude") cfg.ic_amplitude = parse_double(key, v);
  else if (key == "ic_mode") cfg.ic_mode = parse_int(key, v);
  else if (key == "ic_sigma") cfg.ic_sigma = parse_double(key, v);
  else if (key == "ic_center") cfg.ic_center = parse_double(key, v);
  else if (key == "el_check") cfg.el_check = parse_bool(key, v);
  else if (key == "noether_check") cfg.noether_check = parse_bool(key, v);
  else if (key == "classify_check") cfg.classify_check = parse_bool(key, v);
  else if (key == "diagnostics") cfg.diagnostics = parse_bool(key, v);
  else if (key == "euler_bridge") cfg.euler_bridge = parse_bool(key, v);
  else if (key == "el_samples") cfg.el_samples = parse_int(key, v);
  else if (key == "noether_jets") cfg.noether_jets = parse_int(key, v);
  else if (key == "classify_samples") cfg.classify_samples = parse_int(key, v);
  else if (key == "euler_nx") cfg.euler_nx = parse_int(key, v);
  else if (key == "diag_levels") cfg.diag_levels = parse_int(key, v);
  else if (key == "el_tol") cfg.el_tol = parse_double(key, v);
  else if (key == "noether_zero_tol") cfg.noether_zero_tol = parse_double(key, v);
  else if (key == "noether_floor") cfg.noether_floor = parse_double(key, v);
  else if (key == "classify_tol") cfg.classify_tol = parse_double(key, v);
  else if (key == "seed") cfg.seed = parse_u64(key, v);
  else if (key == "threads") cfg.threads = parse_int(key, v);
  else if (key == "out_dir") cfg.out_dir = std::string(v);
  else throw ConfigError("unknown config key '" + key + "'");
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line;
  std::set<std::string> seen;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view sv = trim(line);
    if (sv.empty() || sv.front() == '#') continue;
    const auto eq = sv.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("line " + std::to_string(lineno) +
                        ": expected 'key = value', got '" + std::string(sv) +
                        "'");
    const std::string key{trim(sv.substr(0, eq))};
    const std::string_view value = trim(sv.substr(eq + 1));
    if (key.empty())
      throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    if (!seen.insert(key).second)
      throw ConfigError("duplicate config key '" + key + "'");
    apply_key(cfg, key, value);
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

void validate_config(const RunConfig& cfg) {
  auto require = [](bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
  };
  require(cfg.gamma > 1.0, "key 'gamma' must be > 1");
  require(cfg.cfl > 0.0 && cfg.cfl <= 1.0, "key 'cfl' must be in (0, 1]");
  require(cfg.t_end > 0.0, "key 't_end' must be > 0");
  require(cfg.snapshot_stride >= 1, "key 'snapshot_stride' must be >= 1");
  require(cfg.eps_v > 0.0 && cfg.eps_v < 0.1,
          "key 'eps_v' must be in (0, 0.1)");
  require(cfg.eps_den > 0.0, "key 'eps_den' must be > 0");
  require(cfg.dt_max_factor > 0.0, "key 'dt_max_factor' must be > 0");
  if (cfg.dt_override)
    require(*cfg.dt_override > 0.0, "key 'dt_override' must be > 0 or none");
  require(cfg.grid_n >= 8, "key 'grid_n' must be >= 8");
  require(cfg.xi_max > cfg.xi_min, "key 'xi_max' must exceed 'xi_min'");
  if (cfg.entropy_family == EntropyProfile::Family::constant)
    require(cfg.entropy_s0 >= 0.0, "key 'entropy_s0' must be >= 0");
  require(cfg.ic_mode >= 1, "key 'ic_mode' must be >= 1");
  require(cfg.ic_sigma > 0.0, "key 'ic_sigma' must be > 0");
  require(cfg.el_samples >= 1, "key 'el_samples' must be >= 1");
  require(cfg.noether_jets >= 1, "key 'noether_jets' must be >= 1");
  require(cfg.classify_samples >= 8, "key 'classify_samples' must be >= 8");
  require(cfg.euler_nx >= 8, "key 'euler_nx' must be >= 8");
  require(cfg.diag_levels >= 1 && cfg.diag_levels <= 6,
          "key 'diag_levels' must be in [1, 6]");
  // Verification tolerances may be zero (an impossible gate is a legitimate
  // way to force a failing verdict) but never negative.
  require(cfg.el_tol >= 0.0, "key 'el_tol' must be >= 0");
  require(cfg.noether_zero_tol >= 0.0, "key 'noether_zero_tol' must be >= 0");
  require(cfg.noether_floor >= 0.0, "key 'noether_floor' must be >= 0");
  require(cfg.classify_tol >= 0.0, "key 'classify_tol' must be >= 0");
  require(cfg.threads >= 0, "key 'threads' must be >= 0");
}

std::string format_shortest(double v) {
  char buf[64];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) return "?";
  return std::string(buf, p);
}

std::string canonical_config(const RunConfig& cfg) {
  std::ostringstream out;
  auto kv = [&](const char* key, const std::string& value) {
    out << key << " = " << value << "\n";
  };
  kv("gamma", format_shortest(cfg.gamma));
  kv("cfl", format_shortest(cfg.cfl));
  kv("t_end", format_shortest(cfg.t_end));
  kv("snapshot_stride", std::to_string(cfg.snapshot_stride));
  kv("eps_v", format_shortest(cfg.eps_v));
  kv("eps_den", format_shortest(cfg.eps_den));
  kv("dt_max_factor", format_shortest(cfg.dt_max_factor));
  kv("dt_override",
     cfg.dt_override ? format_shortest(*cfg.dt_override) : "none");
  kv("grid_n", std::to_string(cfg.grid_n));
  kv("xi_min", format_shortest(cfg.xi_min));
  kv("xi_max", format_shortest(cfg.xi_max));
  kv("boundary", boundary_str(cfg.boundary));
  kv("entropy_family", family_str(cfg.entropy_family));
  kv("entropy_s0", format_shortest(cfg.entropy_s0));
  kv("entropy_q", format_shortest(cfg.entropy_q));
  kv("ic_preset", preset_str(cfg.ic_preset));
  kv("ic_amplitude", format_shortest(cfg.ic_amplitude));
  kv("ic_mode", std::to_string(cfg.ic_mode));
  kv("ic_sigma", format_shortest(cfg.ic_sigma));
  kv("ic_center", format_shortest(cfg.ic_center));
  kv("el_check", cfg.el_check ? "true" : "false");
  kv("noether_check", cfg.noether_check ? "true" : "false");
  kv("classify_check", cfg.classify_check ? "true" : "false");
  kv("diagnostics", cfg.diagnostics ? "true" : "false");
  kv("euler_bridge", cfg.euler_bridge ? "true" : "false");
  kv("el_samples", std::to_string(cfg.el_samples));
  kv("noether_jets", std::to_string(cfg.noether_jets));
  kv("classify_samples", std::to_string(cfg.classify_samples));
  kv("euler_nx", std::to_string(cfg.euler_nx));
  kv("diag_levels", std::to_string(cfg.diag_levels));
  kv("el_tol", format_shortest(cfg.el_tol));
  kv("noether_zero_tol", format_shortest(cfg.noether_zero_tol));
  kv("noether_floor", format_shortest(cfg.noether_floor));
  kv("classify_tol", format_shortest(cfg.classify_tol));
  kv("seed", std::to_string(cfg.seed));
  return out.str();
}

std::string config_hash(const RunConfig& cfg) {
  const std::string canon = canonical_config(cfg);
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : canon) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  static const char* digits = "0123456789abcdef";
  for (int i = 15; i >= 0; --i) {
    buf[i] = digits[h & 0xf];
    h >>= 4;
  }
  buf[16] = '\0';
  return std::string(buf, 16);
}

Grid make_grid(const RunConfig& cfg) {
  Grid g;
  g.xi_min = cfg.xi_min;
  g.xi_max = cfg.xi_max;
  g.n = cfg.grid_n;
  g.boundary = cfg.boundary;
  return g;
}

EntropyProfile make_profile(const RunConfig& cfg) {
  switch (cfg.entropy_family) {
    case EntropyProfile::Family::constant:
      return EntropyProfile::constant(cfg.entropy_s0, cfg.xi_min, cfg.xi_max);
    case EntropyProfile::Family::exponential:
      return EntropyProfile::exponential(cfg.entropy_q, cfg.xi_min, cfg.xi_max);
    case EntropyProfile::Family::power:
      return EntropyProfile::power(cfg.entropy_q, cfg.xi_min, cfg.xi_max);
    case EntropyProfile::Family::custom:
      break;
  }
  throw ConfigError("key 'entropy_family' does not name a file-configurable family");
}

SolverConfig make_solver_config(const RunConfig& cfg) {
  SolverConfig sc;
  sc.gamma = cfg.gamma;
  sc.cfl = cfg.cfl;
  sc.t_end = cfg.t_end;
  sc.snapshot_stride = cfg.snapshot_stride;
  sc.eps_v = cfg.eps_v;
  sc.eps_den = cfg.eps_den;
  sc.dt_max_factor = cfg.dt_max_factor;
  sc.dt_override = cfg.dt_override;
  return sc;
}

IcSpec make_ic(const RunConfig& cfg) {
  IcSpec ic;
  ic.preset = cfg.ic_preset;
  ic.amplitude = cfg.ic_amplitude;
  ic.mode = cfg.ic_mode;
  ic.sigma = cfg.ic_sigma;
  ic.center = cfg.ic_center;
  return ic;
}

}  // namespace relgas
