// Configuration parsing, canonical serialization and hashing, and the
// command layer's artifact/exit-code contract.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <unistd.h>

#include <cctype>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "relgas/commands.hpp"
#include "relgas/config.hpp"

using namespace relgas;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_summary(const fs::path& dir) {
  return json::parse(slurp(dir / "summary.json"));
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag)
      : path(fs::temp_directory_path() /
             ("relgas_test_" + tag + "_" + std::to_string(::getpid()))) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

int count_lines(const std::string& text) {
  int n = 0;
  for (char c : text)
    if (c == '\n') ++n;
  return n;
}

}  // namespace

TEST_CASE("parser: defaults, overrides, comments") {
  const RunConfig d = parse_config("");
  CHECK(d.gamma == doctest::Approx(5.0 / 3.0));
  CHECK(d.cfl == 0.4);
  CHECK(d.grid_n == 100);
  CHECK(d.boundary == Boundary::periodic);
  CHECK(d.entropy_family == EntropyProfile::Family::constant);
  CHECK(d.ic_preset == IcSpec::Preset::rest);
  CHECK_FALSE(d.dt_override.has_value());
  CHECK(d.threads == 0);
  CHECK(d.out_dir == "out");

  const RunConfig c = parse_config(
      "# comment line\n"
      "gamma = 1.4\n"
      "\n"
      "boundary= wall\n"
      "entropy_family =exponential\n"
      "entropy_q = 2\n"
      "ic_preset = equilibrium_gaussian_velocity\n"
      "dt_override = 0.001\n"
      "euler_bridge = true\n"
      "seed = 42\n"
      "out_dir = results\n");
  CHECK(c.gamma == 1.4);
  CHECK(c.boundary == Boundary::wall);
  CHECK(c.entropy_family == EntropyProfile::Family::exponential);
  CHECK(c.entropy_q == 2.0);
  CHECK(c.ic_preset == IcSpec::Preset::equilibrium_gaussian_velocity);
  REQUIRE(c.dt_override.has_value());
  CHECK(*c.dt_override == 0.001);
  CHECK(c.euler_bridge);
  CHECK(c.seed == 42);
  CHECK(c.out_dir == "results");

  // "none" clears the override.
  CHECK_FALSE(parse_config("dt_override = none\n").dt_override.has_value());
}

TEST_CASE("parser: rejection messages name the problem") {
  auto message_of = [](const std::string& text) {
    try {
      parse_config(text);
      return std::string();
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
  };
  CHECK(message_of("frobnicate = 1\n").find("unknown config key 'frobnicate'") !=
        std::string::npos);
  CHECK(message_of("gamma = 1.4\ngamma = 1.5\n").find("duplicate") !=
        std::string::npos);
  CHECK(message_of("gamma\n").find("line 1") != std::string::npos);
  CHECK(message_of("ok = \n").find("unknown config key") != std::string::npos);
  CHECK(message_of("gamma = squishy\n").find("gamma") != std::string::npos);
  CHECK(message_of("boundary = cylinder\n").find("boundary") !=
        std::string::npos);
  CHECK(message_of("grid_n = 12.5\n").find("grid_n") != std::string::npos);
  CHECK(message_of("entropy_family = custom\n") != "");
}

TEST_CASE("validation: physical and numerical guards") {
  RunConfig cfg;
  CHECK_NOTHROW(validate_config(cfg));

  RunConfig bad = cfg;
  bad.gamma = 1.0;
  CHECK_THROWS_AS(validate_config(bad), ConfigError);
  bad = cfg;
  bad.cfl = 1.2;
  CHECK_THROWS_AS(validate_config(bad), ConfigError);
  bad = cfg;
  bad.classify_samples = 7;
  CHECK_THROWS_AS(validate_config(bad), ConfigError);
  bad = cfg;
  bad.diag_levels = 0;
  CHECK_THROWS_AS(validate_config(bad), ConfigError);
  bad = cfg;
  bad.diag_levels = 7;
  CHECK_THROWS_AS(validate_config(bad), ConfigError);
  bad = cfg;
  bad.grid_n = 4;
  CHECK_THROWS_AS(validate_config(bad), ConfigError);

  // Zero tolerances are legal: they force the strictest possible gate
  // (verify-el with el_tol = 0 must reach the FAIL path, not a config error).
  RunConfig strict = cfg;
  strict.el_tol = 0.0;
  CHECK_NOTHROW(validate_config(strict));
}

TEST_CASE("canonical form: fixed order, environment keys excluded") {
  RunConfig cfg;
  const std::string canon = canonical_config(cfg);
  CHECK(canon.find("gamma = ") != std::string::npos);
  CHECK(canon.find("threads") == std::string::npos);
  CHECK(canon.find("out_dir") == std::string::npos);

  // Round trip: parsing the canonical form reproduces it.
  CHECK(canonical_config(parse_config(canon)) == canon);

  RunConfig env = cfg;
  env.threads = 8;
  env.out_dir = "elsewhere";
  CHECK(canonical_config(env) == canon);
  CHECK(config_hash(env) == config_hash(cfg));

  RunConfig other = cfg;
  other.gamma = 1.4;
  CHECK(config_hash(other) != config_hash(cfg));

  const std::string h = config_hash(cfg);
  CHECK(h.size() == 16);
  for (char c : h) CHECK(std::isxdigit(static_cast<unsigned char>(c)));
  // Hash of the defaults is frozen: changing any default, the canonical key
  // order, or the number formatting is a breaking change to artifact
  // identity and must be deliberate.
  CHECK(config_hash(parse_config("")) == "da44ee320fed3052");
}

TEST_CASE("shortest round-trip number formatting") {
  for (double v : {0.1, 1.0 / 3.0, 2.5e-300, 1e22, -0.0, 5.0, 10.0 / 21.0}) {
    const std::string s = format_shortest(v);
    CHECK(std::strtod(s.c_str(), nullptr) == v);
  }
  CHECK(format_shortest(1.0) == "1");
  CHECK(format_shortest(0.5) == "0.5");
}

TEST_CASE("verify-el command: artifacts and exit codes") {
  TempDir dir("verifyel");
  RunConfig cfg;
  cfg.el_samples = 200;
  cfg.out_dir = (dir.path / "ok").string();
  CHECK(cmd_verify_el(cfg) == 0);
  const json s = read_summary(dir.path / "ok");
  CHECK(s["command"] == "verify-el");
  CHECK(s["config_hash"].get<std::string>().size() == 16);
  CHECK(s["el_check"]["pass"] == true);
  CHECK(s["el_check"]["max_parallel_deviation"].get<double>() < 1e-8);

  // An unreachable tolerance flips the exit code to "verification failed".
  RunConfig strict = cfg;
  strict.el_tol = 0.0;
  strict.out_dir = (dir.path / "strict").string();
  CHECK(cmd_verify_el(strict) == 3);
  CHECK(read_summary(dir.path / "strict")["el_check"]["pass"] == false);
}

TEST_CASE("classify command reports the measured family") {
  TempDir dir("classify");
  RunConfig cfg;
  cfg.entropy_family = EntropyProfile::Family::exponential;
  cfg.entropy_q = 2.0;
  cfg.boundary = Boundary::wall;
  cfg.out_dir = (dir.path / "exp").string();
  CHECK(cmd_classify_entropy(cfg) == 0);
  const json s = read_summary(dir.path / "exp");
  CHECK(s["classification"]["family"] == "exponential");
  CHECK(s["classification"]["q"].get<double>() ==
        doctest::Approx(2.0).epsilon(1e-9));
  CHECK(s["classification"]["extensions"].size() == 1);
  CHECK(s["classification"]["kernel"].size() == 3);
}

TEST_CASE("simulate command: artifact shapes and conserved charges") {
  TempDir dir("simulate");
  RunConfig cfg;
  cfg.grid_n = 32;
  cfg.t_end = 0.2;
  cfg.snapshot_stride = 4;
  cfg.euler_bridge = true;
  cfg.out_dir = (dir.path / "run").string();
  // Rest state: every charge is constant to round-off.
  cfg.ic_preset = IcSpec::Preset::rest;
  CHECK(cmd_simulate(cfg) == 0);

  const json s = read_summary(dir.path / "run");
  CHECK(s["command"] == "simulate");
  CHECK(s["failed"] == false);
  const int nsnaps = s["snapshots"].get<int>();
  CHECK(nsnaps >= 2);
  REQUIRE(s.contains("diagnostics"));
  REQUIRE(s["diagnostics"].is_array());
  CHECK(s["diagnostics"].size() == 4);  // constant entropy: T1, T2, T3, T5
  for (const json& law : s["diagnostics"]) {
    INFO("law ", law["law"].get<std::string>());
    CHECK(law["drift_rel"].get<double>() < 1e-12);
    CHECK(law["max_balance_residual"].get<double>() < 1e-12);
  }

  const std::string snaps = slurp(dir.path / "run" / "snapshots.csv");
  CHECK(snaps.rfind("t,xi,phi,phi_t,phi_xi,m,v\n", 0) == 0);
  CHECK(count_lines(snaps) == 1 + nsnaps * 32);  // header + rows per node

  const std::string diag = slurp(dir.path / "run" / "diagnostics.csv");
  CHECK(diag.rfind("t,law,charge,balance_residual,max_div_residual\n", 0) == 0);
  CHECK(count_lines(diag) == 1 + nsnaps * 4);

  const std::string eul = slurp(dir.path / "run" / "eulerian.csv");
  CHECK(eul.rfind("t,x,v,m,n,S", 0) == 0);
  // Per-law density columns are appended to the header.
  CHECK(eul.find("T1_t") != std::string::npos);
  CHECK(eul.find("T5_x") != std::string::npos);
}

TEST_CASE("simulate command: guard trip exits 2 with partial artifacts") {
  TempDir dir("guard");
  RunConfig cfg;
  cfg.grid_n = 32;
  cfg.t_end = 2.0;
  cfg.dt_override = 0.2;
  cfg.ic_preset = IcSpec::Preset::sine_velocity;
  cfg.ic_amplitude = 0.1;
  cfg.out_dir = (dir.path / "boom").string();
  CHECK(cmd_simulate(cfg) == 2);
  const json s = read_summary(dir.path / "boom");
  CHECK(s["failed"] == true);
  CHECK_FALSE(s["failure"].get<std::string>().empty());
  CHECK(fs::exists(dir.path / "boom" / "snapshots.csv"));
  bool announced = false;
  for (const json& ev : s["events"])
    announced = announced ||
                ev.get<std::string>().find("dt_override in effect") !=
                    std::string::npos;
  CHECK(announced);
}

TEST_CASE("invalid configuration surfaces as an exception, not an artifact") {
  TempDir dir("badcfg");
  RunConfig cfg;
  cfg.gamma = 1.0;
  cfg.out_dir = (dir.path / "never").string();
  CHECK_THROWS_AS(cmd_simulate(cfg), ConfigError);
  CHECK_FALSE(fs::exists(dir.path / "never" / "summary.json"));
}

TEST_CASE("diagnose command: refinement ladder with order estimates") {
  TempDir dir("diagnose");
  RunConfig cfg;
  cfg.boundary = Boundary::wall;
  cfg.entropy_family = EntropyProfile::Family::exponential;
  cfg.entropy_q = 1.0;
  cfg.ic_preset = IcSpec::Preset::equilibrium_gaussian_velocity;
  cfg.ic_amplitude = 0.03;
  cfg.ic_sigma = 0.07;
  cfg.grid_n = 48;
  cfg.t_end = 0.25;
  cfg.diag_levels = 2;
  cfg.out_dir = (dir.path / "ladder").string();
  CHECK(cmd_diagnose(cfg) == 0);
  const json s = read_summary(dir.path / "ladder");
  REQUIRE(s.contains("levels"));
  CHECK(s["levels"].size() == 2);
  CHECK(s["levels"][0]["n"] == 48);
  CHECK(s["levels"][1]["n"] == 96);
  REQUIRE(s.contains("orders"));
  CHECK(s["orders"].size() == 3);  // exponential: T1, T2, T3
  for (const json& row : s["orders"]) {
    // Balance residuals on a smooth run refine at roughly second order.
    if (row["balance_order"].is_number())
      CHECK(row["balance_order"].get<double>() > 1.0);
  }
  CHECK(fs::exists(dir.path / "ladder" / "diagnostics.csv"));
}

TEST_CASE("to-euler command: residual and constraint summary") {
  TempDir dir("toeuler");
  RunConfig cfg;
  cfg.boundary = Boundary::wall;
  cfg.entropy_family = EntropyProfile::Family::exponential;
  cfg.entropy_q = 1.0;
  cfg.ic_preset = IcSpec::Preset::equilibrium_gaussian_velocity;
  cfg.ic_amplitude = 0.03;
  cfg.ic_sigma = 0.07;
  cfg.grid_n = 64;
  cfg.t_end = 0.2;
  cfg.euler_nx = 96;
  cfg.out_dir = (dir.path / "lab").string();
  CHECK(cmd_to_euler(cfg) == 0);
  const json s = read_summary(dir.path / "lab");
  REQUIRE(s.contains("euler_residuals"));
  CHECK(s["euler_residuals"]["max_continuity"].get<double>() < 0.1);
  CHECK(s["euler_residuals"]["max_entropy"].get<double>() < 0.1);
  CHECK(s["euler_residuals"]["max_momentum"].get<double>() < 0.1);
  REQUIRE(s.contains("constraint"));
  CHECK(s["constraint"]["family"] == "exponential");
  CHECK(s["constraint"]["max_abs"].get<double>() < 0.05);
  CHECK(fs::exists(dir.path / "lab" / "eulerian.csv"));

  // Constant entropy has no local constraint: reported as null, not an error.
  RunConfig cc;
  cc.grid_n = 32;
  cc.t_end = 0.1;
  cc.ic_preset = IcSpec::Preset::sine_velocity;
  cc.ic_amplitude = 0.05;
  cc.out_dir = (dir.path / "flat").string();
  CHECK(cmd_to_euler(cc) == 0);
  CHECK(read_summary(dir.path / "flat")["constraint"].is_null());
}

TEST_CASE("identical configurations produce byte-identical artifacts") {
  TempDir dir("bytes");
  RunConfig cfg;
  cfg.grid_n = 32;
  cfg.t_end = 0.2;
  cfg.snapshot_stride = 4;
  cfg.ic_preset = IcSpec::Preset::sine_velocity;
  cfg.ic_amplitude = 0.08;
  cfg.euler_bridge = true;

  RunConfig a = cfg, b = cfg;
  a.out_dir = (dir.path / "a").string();
  b.out_dir = (dir.path / "b").string();
  b.threads = 2;  // environment-only key: must not affect bytes
  REQUIRE(cmd_simulate(a) == 0);
  REQUIRE(cmd_simulate(b) == 0);
  for (const char* f :
       {"snapshots.csv", "diagnostics.csv", "eulerian.csv", "summary.json"}) {
    INFO("artifact ", f);
    CHECK(slurp(dir.path / "a" / f) == slurp(dir.path / "b" / f));
  }
}
