// Flat "key = value" run configuration shared by all CLI commands.
//
// Unknown keys are rejected by name; every key has a default, so a config
// file sets only what it changes.  The canonical serialization fixes the key
// order and prints numbers in shortest round-trip form; its FNV-1a hash
// stamps every artifact.  Keys that cannot change results (threads, out_dir)
// are excluded from the canonical form so runs differing only in them
// produce byte-identical artifacts.
#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "relgas/core.hpp"
#include "relgas/solver.hpp"

namespace relgas {

struct RunConfig {
  // Gas and stepping.
  double gamma = 5.0 / 3.0;
  double cfl = 0.4;
  double t_end = 1.0;
  int snapshot_stride = 8;
  double eps_v = 1e-6;
  double eps_den = 1e-12;
  double dt_max_factor = 0.25;
  std::optional<double> dt_override;  // absent by default; "none" in files

  // Grid.
  int grid_n = 100;
  double xi_min = 0.0;
  double xi_max = 1.0;
  Boundary boundary = Boundary::periodic;

  // Entropy profile (tagged families only; custom profiles are library-level).
  EntropyProfile::Family entropy_family = EntropyProfile::Family::constant;
  double entropy_s0 = 1.0;  // constant family level
  double entropy_q = 1.0;   // exponential / power exponent

  // Initial condition.
  IcSpec::Preset ic_preset = IcSpec::Preset::rest;
  double ic_amplitude = 0.1;
  int ic_mode = 1;
  double ic_sigma = 0.1;
  double ic_center = 0.5;

  // Verification toggles (extra sections in the simulate summary) and the
  // knobs shared with the dedicated commands.
  bool el_check = false;
  bool noether_check = false;
  bool classify_check = false;
  bool diagnostics = true;
  bool euler_bridge = false;
  int el_samples = 1000;
  int noether_jets = 10000;
  int classify_samples = 17;
  int euler_nx = 256;
  int diag_levels = 1;  // >1: refinement ladder with order estimates
  double el_tol = 1e-8;
  double noether_zero_tol = 1e-10;
  double noether_floor = 1e-3;
  double classify_tol = 1e-8;

  std::uint64_t seed = 1;

  // Environment only; excluded from the canonical form and hash.
  int threads = 0;  // 0 keeps the runtime default
  std::string out_dir = "out";
};

// Parses config text / file. Throws ConfigError naming the offending key.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

void validate_config(const RunConfig& cfg);

std::string canonical_config(const RunConfig& cfg);
std::string config_hash(const RunConfig& cfg);  // 16 hex digits

// Derived run objects (validate_config first).
Grid make_grid(const RunConfig& cfg);
EntropyProfile make_profile(const RunConfig& cfg);
SolverConfig make_solver_config(const RunConfig& cfg);
IcSpec make_ic(const RunConfig& cfg);

// Shortest decimal that round-trips to the same double ("nan"/"inf" for
// non-finite values).
std::string format_shortest(double v);

}  // namespace relgas
