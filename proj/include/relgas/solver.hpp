#pragma once

#include <optional>
#include <string>
#include <vector>

#include "relgas/core.hpp"

// Method-of-lines integrator for the displacement u(xi, t) = phi - xi and
// velocity w = phi_t. Second-order centered stencils in xi (one-sided at
// walls), classical RK4 in t with a fixed step chosen from the initial
// characteristic speeds.

namespace relgas {

enum class Boundary { periodic, wall };

struct Grid {
  double xi_min = 0.0;
  double xi_max = 1.0;
  int n = 100;  // number of intervals
  Boundary boundary = Boundary::periodic;

  // Periodic grids store n nodes (the right endpoint is identified with the
  // left); wall grids store n+1 nodes including both ends.
  int num_nodes() const { return boundary == Boundary::periodic ? n : n + 1; }
  double dxi() const { return (xi_max - xi_min) / n; }
  double node(int j) const { return xi_min + dxi() * j; }
  double length() const { return xi_max - xi_min; }
  void validate() const;
};

struct SimState {
  double t = 0.0;
  std::vector<double> u;  // displacement phi - xi
  std::vector<double> w;  // velocity phi_t
};

struct SpatialDerivs {
  std::vector<double> phi_xi;
  std::vector<double> phi_xixi;
  std::vector<double> phi_txi;
};

struct IcSpec {
  enum class Preset {
    rest,
    sine_displacement,
    sine_velocity,
    gaussian_velocity,
    equilibrium,
    equilibrium_sine_velocity,
    equilibrium_gaussian_velocity,
  };
  Preset preset = Preset::rest;
  double amplitude = 0.1;  // displacement or velocity amplitude
  int mode = 1;            // wavenumber for the sine presets
  double sigma = 0.1;      // width of the gaussian bump
  double center = 0.5;     // center of the gaussian bump
};

struct SolverConfig {
  double gamma = 5.0 / 3.0;
  double cfl = 0.4;
  double t_end = 1.0;
  int snapshot_stride = 8;
  double eps_v = 1e-6;           // superluminal guard margin: |w| < 1 - eps_v
  double eps_den = 1e-12;        // accel denominator guard
  double dt_max_factor = 0.25;   // dt cap = factor * dxi (binds in the dust limit)
  // Test hook: force the step size, bypassing the pre-step stability guard
  // so that genuine blow-up can be observed and reported.
  std::optional<double> dt_override;
};

struct Snapshot {
  double t = 0.0;
  std::vector<double> u, w;
};

struct Trajectory {
  Grid grid;
  double dt = 0.0;
  int stride = 1;
  std::vector<Snapshot> snaps;
  bool failed = false;
  std::string failure;
  std::vector<std::string> events;
  std::string config_hash;

  double snap_dt() const { return dt * stride; }
};

// Stretch, its xi-derivative, and the mixed derivative at every node.
// Throws NonPositiveStretch naming the first offending node.
SpatialDerivs spatial_derivs(const SimState& s, const Grid& g);

// Semi-discrete right-hand side: du/dt = w, dw/dt = accel(...). Wall end
// nodes are pinned (dw/dt = 0). OpenMP-parallel over nodes; guard
// violations are collected per node and rethrown deterministically.
void rhs(const SimState& s, const Grid& g, const EntropyProfile& profile,
         const SolverConfig& cfg, std::vector<double>& du, std::vector<double>& dw);

// Largest characteristic slope |dxi/dt| over all nodes, from the roots of
// a_tt l^2 - b_txi l + c_xixi = 0. Throws LossOfHyperbolicity if the
// discriminant goes negative.
double max_char_speed(const SimState& s, const Grid& g,
                      const EntropyProfile& profile, const SolverConfig& cfg);

// min(cfl * dxi / max_char_speed, dt_max_factor * dxi). The cap keeps the
// dust limit (zero sound speed) finite.
double stable_dt(const SimState& s, const Grid& g, const EntropyProfile& profile,
                 const SolverConfig& cfg);

// One classical RK4 step of size dt, in place.
void step_rk4(SimState& s, const Grid& g, const EntropyProfile& profile,
              const SolverConfig& cfg, double dt);

SimState make_initial_state(const Grid& g, const EntropyProfile& profile,
                            double gamma, const IcSpec& ic);

// Integrates to t_end with a fixed step. The step divides t_end exactly and
// the step count is a multiple of snapshot_stride, so snapshots are uniform
// in t and include both endpoints. Guard trips mark the trajectory failed
// and return the partial result.
Trajectory run(const SimState& ic, const Grid& g, const EntropyProfile& profile,
               const SolverConfig& cfg);

// Rejects inconsistent combinations (periodic grid with a non-periodic
// tagged entropy family, power profile domain crossing zero, bad cfl, ...).
void validate_setup(const Grid& g, const EntropyProfile& profile,
                    const SolverConfig& cfg);

}  // namespace relgas
