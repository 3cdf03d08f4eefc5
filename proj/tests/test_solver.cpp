// Method-of-lines integrator: spatial stencils, equilibrium fixed points,
// guard behavior, convergence against a refined reference, determinism, and
// bit-identity between the parallel kernels and the serial reference path.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "relgas/parallel.hpp"
#include "relgas/ref_solver.hpp"
#include "relgas/solver.hpp"

using namespace relgas;

namespace {

bool bits_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() &&
         std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

SimState smooth_state(const Grid& g) {
  SimState s;
  const int nn = g.num_nodes();
  s.u.resize(nn);
  s.w.resize(nn);
  for (int j = 0; j < nn; ++j) {
    const double xi = g.node(j);
    s.u[j] = 0.04 * std::sin(2 * M_PI * (xi - g.xi_min) / g.length());
    s.w[j] = 0.06 * std::sin(4 * M_PI * (xi - g.xi_min) / g.length() + 0.4);
  }
  return s;
}

}  // namespace

TEST_CASE("grid geometry and validation") {
  Grid g;
  g.n = 10;
  CHECK(g.num_nodes() == 10);
  g.boundary = Boundary::wall;
  CHECK(g.num_nodes() == 11);
  CHECK(g.dxi() == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(g.node(3) == doctest::Approx(0.3).epsilon(1e-14));
  CHECK_NOTHROW(g.validate());

  Grid bad = g;
  bad.n = 7;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = g;
  bad.xi_max = bad.xi_min;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("setup validation rejects inconsistent combinations") {
  Grid g;
  g.n = 32;
  SolverConfig cfg;

  // Periodic boundaries demand a periodic entropy function.
  CHECK_THROWS_AS(
      validate_setup(g, EntropyProfile::exponential(1.0), cfg), ConfigError);
  CHECK_NOTHROW(validate_setup(g, EntropyProfile::constant(1.0), cfg));

  // Power profiles must not cross xi = 0 (example from the catalogue: a
  // power run on [0, 1] must fail before stepping, not at node 0).
  Grid wall = g;
  wall.boundary = Boundary::wall;
  CHECK_THROWS_AS(
      validate_setup(wall, EntropyProfile::power(-1.0, 0.5, 2.0), cfg),
      ConfigError);
  Grid shifted = wall;
  shifted.xi_min = 1.0;
  shifted.xi_max = 2.0;
  CHECK_NOTHROW(
      validate_setup(shifted, EntropyProfile::power(-1.0, 0.5, 2.5), cfg));

  SolverConfig bad = cfg;
  bad.cfl = 0.0;
  CHECK_THROWS_AS(validate_setup(g, EntropyProfile::constant(1.0), bad),
                  ConfigError);
  bad = cfg;
  bad.cfl = 1.5;
  CHECK_THROWS_AS(validate_setup(g, EntropyProfile::constant(1.0), bad),
                  ConfigError);
  bad = cfg;
  bad.t_end = 0.0;
  CHECK_THROWS_AS(validate_setup(g, EntropyProfile::constant(1.0), bad),
                  ConfigError);
  bad = cfg;
  bad.snapshot_stride = 0;
  CHECK_THROWS_AS(validate_setup(g, EntropyProfile::constant(1.0), bad),
                  ConfigError);
  bad = cfg;
  bad.gamma = 1.0;
  CHECK_THROWS_AS(validate_setup(g, EntropyProfile::constant(1.0), bad),
                  ConfigError);

  // run() validates before integrating: the throw escapes rather than being
  // folded into a failed trajectory.
  SimState s;
  s.u.assign(wall.num_nodes(), 0.0);
  s.w.assign(wall.num_nodes(), 0.0);
  CHECK_THROWS_AS(
      run(s, wall, EntropyProfile::power(-1.0, 0.5, 2.0), cfg), ConfigError);
}

TEST_CASE("spatial stencils are exact on quadratics (wall)") {
  Grid g;
  g.n = 16;
  g.boundary = Boundary::wall;
  const int nn = g.num_nodes();
  SimState s;
  s.u.resize(nn);
  s.w.resize(nn);
  for (int j = 0; j < nn; ++j) {
    const double xi = g.node(j);
    s.u[j] = 2.0 + 0.3 * xi + 0.1 * xi * xi;  // phi = xi + u
    s.w[j] = 0.5 + 0.2 * xi * xi;
  }
  const SpatialDerivs d = spatial_derivs(s, g);
  for (int j = 0; j < nn; ++j) {
    const double xi = g.node(j);
    CHECK(d.phi_xi[j] == doctest::Approx(1.3 + 0.2 * xi).epsilon(1e-12));
    CHECK(d.phi_xixi[j] == doctest::Approx(0.2).epsilon(1e-10));
    CHECK(d.phi_txi[j] == doctest::Approx(0.4 * xi).epsilon(1e-10));
  }

  // Non-positive stretch is reported with the offending node.
  SimState folded = s;
  for (int j = 0; j < nn; ++j) folded.u[j] = -g.node(j);  // phi_xi = 0
  CHECK_THROWS_AS(spatial_derivs(folded, g), NonPositiveStretch);
}

TEST_CASE("spatial stencils converge at second order (periodic)") {
  auto max_err = [](int n) {
    Grid g;
    g.n = n;
    SimState s;
    s.u.resize(n);
    s.w.assign(n, 0.0);
    for (int j = 0; j < n; ++j)
      s.u[j] = 0.1 * std::sin(2 * M_PI * g.node(j));
    const SpatialDerivs d = spatial_derivs(s, g);
    double e = 0.0;
    for (int j = 0; j < n; ++j) {
      const double xi = g.node(j);
      e = std::max(e, std::abs(d.phi_xi[j] -
                               (1.0 + 0.2 * M_PI * std::cos(2 * M_PI * xi))));
      e = std::max(
          e, std::abs(d.phi_xixi[j] +
                      0.4 * M_PI * M_PI * std::sin(2 * M_PI * xi)));
    }
    return e;
  };
  const double e1 = max_err(64), e2 = max_err(128);
  CHECK(e1 / e2 > 3.5);
  CHECK(e1 / e2 < 4.5);
}

TEST_CASE("rest state on constant entropy is a bitwise fixed point") {
  Grid g;
  g.n = 48;
  const EntropyProfile prof = EntropyProfile::constant(1.0);
  SolverConfig cfg;
  SimState s;
  s.u.assign(g.num_nodes(), 0.0);
  s.w.assign(g.num_nodes(), 0.0);
  const double dt = 1e-3;
  for (int step = 0; step < 1000; ++step) step_rk4(s, g, prof, cfg, dt);
  const std::vector<double> zeros(g.num_nodes(), 0.0);
  CHECK(bits_equal(s.u, zeros));
  CHECK(bits_equal(s.w, zeros));
}

TEST_CASE("equilibrium preset balances pressure to truncation order") {
  // For a varying profile the preset builds the static uniform-pressure
  // stretch; the discrete residual acceleration is pure stencil truncation
  // and must shrink by ~4x per refinement.
  auto residual = [](int n) {
    Grid g;
    g.n = n;
    g.boundary = Boundary::wall;
    const EntropyProfile prof = EntropyProfile::exponential(1.0);
    SolverConfig cfg;
    IcSpec ic;
    ic.preset = IcSpec::Preset::equilibrium;
    const SimState s = make_initial_state(g, prof, cfg.gamma, ic);
    std::vector<double> du, dw;
    rhs(s, g, prof, cfg, du, dw);
    double m = 0.0;
    for (double a : dw) m = std::max(m, std::abs(a));
    return m;
  };
  const double r1 = residual(64), r2 = residual(128);
  CHECK(r1 < 1e-2);
  CHECK(r1 / r2 > 3.0);
  CHECK(r1 / r2 < 5.0);
}

TEST_CASE("wall nodes are pinned") {
  Grid g;
  g.n = 24;
  g.boundary = Boundary::wall;
  const EntropyProfile prof = EntropyProfile::constant(1.0);
  SolverConfig cfg;
  SimState s = smooth_state(g);
  std::vector<double> du, dw;
  rhs(s, g, prof, cfg, du, dw);
  CHECK(dw.front() == 0.0);
  CHECK(dw.back() == 0.0);
  CHECK(du.front() == s.w.front());  // du/dt = w everywhere, ends included
}

TEST_CASE("kernel guards report the first offending node") {
  Grid g;
  g.n = 32;
  const EntropyProfile prof = EntropyProfile::constant(1.0);
  SolverConfig cfg;
  SimState s = smooth_state(g);
  s.w[5] = 1.0;
  s.w[9] = 1.2;
  std::vector<double> du, dw;
  try {
    rhs(s, g, prof, cfg, du, dw);
    FAIL("expected SuperluminalState");
  } catch (const SuperluminalState& e) {
    CHECK(std::string(e.what()).find("node 5") != std::string::npos);
  }
}

TEST_CASE("parallel kernels match the serial reference bit for bit") {
  Grid g;
  g.n = 257;  // odd size stresses chunk boundaries
  const EntropyProfile prof = EntropyProfile::constant(1.0);
  SolverConfig cfg;
  const SimState s = smooth_state(g);

  std::vector<double> du_p, dw_p, du_r, dw_r;
  rhs(s, g, prof, cfg, du_p, dw_p);
  ref::rhs(s, g, prof, cfg, du_r, dw_r);
  CHECK(bits_equal(du_p, du_r));
  CHECK(bits_equal(dw_p, dw_r));

  CHECK(max_char_speed(s, g, prof, cfg) == ref::max_char_speed(s, g, prof, cfg));

  SimState a = s, b = s;
  for (int step = 0; step < 25; ++step) {
    step_rk4(a, g, prof, cfg, 1e-3);
    ref::step_rk4(b, g, prof, cfg, 1e-3);
  }
  CHECK(bits_equal(a.u, b.u));
  CHECK(bits_equal(a.w, b.w));

  // Thread count must not change a single bit.
  par::set_threads(3);
  std::vector<double> du_3, dw_3;
  rhs(s, g, prof, cfg, du_3, dw_3);
  par::set_threads(1);
  CHECK(bits_equal(du_3, du_r));
  CHECK(bits_equal(dw_3, dw_r));
}

TEST_CASE("run(): snapshot lattice and determinism") {
  Grid g;
  g.n = 48;
  const EntropyProfile prof = EntropyProfile::constant(1.0);
  SolverConfig cfg;
  cfg.t_end = 0.3;
  cfg.snapshot_stride = 4;
  IcSpec ic;
  ic.preset = IcSpec::Preset::sine_velocity;
  ic.amplitude = 0.05;
  const SimState s0 = make_initial_state(g, prof, cfg.gamma, ic);

  const Trajectory t1 = run(s0, g, prof, cfg);
  REQUIRE_FALSE(t1.failed);
  REQUIRE(t1.snaps.size() >= 3);
  CHECK(t1.snaps.front().t == 0.0);
  CHECK(t1.snaps.back().t == cfg.t_end);  // exact, not approximately
  const double sdt = t1.snap_dt();
  for (std::size_t k = 0; k < t1.snaps.size(); ++k)
    CHECK(std::abs(t1.snaps[k].t - double(k) * sdt) < 1e-12);
  // Step count is a multiple of the stride.
  const double total = cfg.t_end / t1.dt;
  CHECK(std::abs(total / cfg.snapshot_stride -
                 std::round(total / cfg.snapshot_stride)) < 1e-9);

  const Trajectory t2 = run(s0, g, prof, cfg);
  REQUIRE(t2.snaps.size() == t1.snaps.size());
  for (std::size_t k = 0; k < t1.snaps.size(); ++k) {
    CHECK(bits_equal(t1.snaps[k].u, t2.snaps[k].u));
    CHECK(bits_equal(t1.snaps[k].w, t2.snaps[k].w));
  }
  CHECK(t1.dt == t2.dt);
  CHECK(t1.events == t2.events);
}

TEST_CASE("solution converges at second order against a refined reference") {
  const EntropyProfile prof = EntropyProfile::constant(1.0);
  auto solve = [&](int n) {
    Grid g;
    g.n = n;
    g.boundary = Boundary::wall;
    SolverConfig cfg;
    cfg.t_end = 0.3;
    cfg.snapshot_stride = 1;
    IcSpec ic;
    ic.preset = IcSpec::Preset::sine_velocity;
    ic.amplitude = 0.05;
    const SimState s0 = make_initial_state(g, prof, cfg.gamma, ic);
    Trajectory t = run(s0, g, prof, cfg);
    REQUIRE_FALSE(t.failed);
    return t.snaps.back();
  };
  const Snapshot ref = solve(320);
  auto err = [&](int n) {
    const Snapshot s = solve(n);
    const int r = 320 / n;
    double e = 0.0;
    for (int j = 0; j < int(s.u.size()); ++j) {
      e = std::max(e, std::abs(s.u[j] - ref.u[std::size_t(j) * r]));
      e = std::max(e, std::abs(s.w[j] - ref.w[std::size_t(j) * r]));
    }
    return e;
  };
  const double e40 = err(40), e80 = err(80);
  const double order = std::log2(e40 / e80);
  INFO("e40=", e40, " e80=", e80, " order=", order);
  CHECK(order > 1.7);
  CHECK(order < 2.3);
}

TEST_CASE("linear wave returns after one period (dispersion)") {
  // Acoustic speed on the constant background: l0^2 = 10/21 at gamma = 5/3.
  // After one fundamental period L/l0 a small standing wave must reproduce
  // its initial profile up to O((k dxi)^2) phase error.
  Grid g;
  g.n = 128;
  const EntropyProfile prof = EntropyProfile::constant(1.0);
  SolverConfig cfg;
  cfg.t_end = 1.0 / std::sqrt(10.0 / 21.0);
  cfg.snapshot_stride = 1000000;  // endpoints only
  IcSpec ic;
  ic.preset = IcSpec::Preset::sine_velocity;
  ic.amplitude = 1e-6;
  const SimState s0 = make_initial_state(g, prof, cfg.gamma, ic);
  const Trajectory t = run(s0, g, prof, cfg);
  REQUIRE_FALSE(t.failed);
  double e = 0.0;
  for (int j = 0; j < g.num_nodes(); ++j)
    e = std::max(e, std::abs(t.snaps.back().w[j] - s0.w[j]));
  CHECK(e / ic.amplitude < 1e-2);
}

TEST_CASE("dust limit: zero sound speed binds the dt cap") {
  Grid g;
  g.n = 32;
  const EntropyProfile dust = EntropyProfile::constant(0.0);
  SolverConfig cfg;
  cfg.t_end = 0.2;
  SimState s;
  s.u.assign(g.num_nodes(), 0.0);
  s.w.assign(g.num_nodes(), 0.0);
  for (int j = 0; j < g.num_nodes(); ++j)
    s.w[j] = 0.05 * std::sin(2 * M_PI * g.node(j));

  CHECK(max_char_speed(s, g, dust, cfg) == 0.0);
  CHECK(stable_dt(s, g, dust, cfg) ==
        doctest::Approx(cfg.dt_max_factor * g.dxi()).epsilon(1e-15));

  const Trajectory t = run(s, g, dust, cfg);
  REQUIRE_FALSE(t.failed);
  bool capped = false;
  for (const std::string& ev : t.events)
    capped = capped || ev.find("dt capped") != std::string::npos;
  CHECK(capped);
}

TEST_CASE("dt override bypasses the stability guard and blow-up is reported") {
  Grid g;
  g.n = 32;
  const EntropyProfile prof = EntropyProfile::constant(1.0);
  SolverConfig cfg;
  cfg.t_end = 2.0;
  cfg.dt_override = 0.2;  // ~6x the stable step
  IcSpec ic;
  ic.preset = IcSpec::Preset::sine_velocity;
  ic.amplitude = 0.1;
  const SimState s0 = make_initial_state(g, prof, cfg.gamma, ic);
  const Trajectory t = run(s0, g, prof, cfg);
  CHECK(t.failed);
  CHECK_FALSE(t.failure.empty());
  bool announced = false, guarded = false;
  for (const std::string& ev : t.events) {
    announced = announced || ev.find("dt_override in effect") != std::string::npos;
    guarded = guarded || ev.rfind("guard: ", 0) == 0;
  }
  CHECK(announced);
  CHECK(guarded);
  // Partial results up to the failure are retained.
  CHECK_FALSE(t.snaps.empty());
}

TEST_CASE("speed-up past the fixed step trips the timestep guard") {
  // At rest the step is capped at dt_max_factor * dxi, so the guard line
  // sits at a ~4x characteristic speed-up. A large compressive wave focuses
  // hard enough to cross it mid-run, well before any state becomes invalid.
  Grid g;
  g.n = 64;
  const EntropyProfile prof = EntropyProfile::constant(1.0);
  SolverConfig cfg;
  cfg.cfl = 0.9;
  cfg.t_end = 5.0;
  IcSpec ic;
  ic.preset = IcSpec::Preset::sine_velocity;
  ic.amplitude = 0.7;
  const SimState s0 = make_initial_state(g, prof, cfg.gamma, ic);
  const Trajectory t = run(s0, g, prof, cfg);
  CHECK(t.failed);
  CHECK(t.failure.find("UnstableTimestep") != std::string::npos);
  // The trip happens mid-run: some snapshots exist, but not the full set.
  CHECK(t.snaps.size() > 4);
  CHECK(t.snaps.back().t < cfg.t_end);
}

TEST_CASE("initial-condition guards") {
  Grid g;
  g.n = 32;
  const EntropyProfile prof = EntropyProfile::constant(1.0);
  IcSpec ic;
  ic.preset = IcSpec::Preset::sine_velocity;
  ic.amplitude = 1.0;
  CHECK_THROWS_AS(make_initial_state(g, prof, 5.0 / 3.0, ic), DomainError);

  // State size mismatches are rejected up front.
  SolverConfig cfg;
  SimState bad;
  bad.u.assign(g.num_nodes() + 1, 0.0);
  bad.w.assign(g.num_nodes() + 1, 0.0);
  CHECK_THROWS_AS(run(bad, g, prof, cfg), DomainError);
}
