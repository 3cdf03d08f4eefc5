// Bridge between the material (mass-coordinate) description and laboratory
// (Eulerian) fields.
//
// A solver state gives, per node, the map x = phi(xi, t) and its first
// derivatives.  Laboratory fields follow pointwise:
//   x = phi,  v = phi_t,  m = 1/phi_xi,  n = m * Gamma,  S = S0(xi).
// Because phi_xi > 0 the map xi -> x is strictly monotone, so fields can be
// resampled onto a uniform laboratory grid with monotone cubic interpolation.
//
// The per-law density columns are the material densities re-expressed in
// laboratory variables (a pointwise transcription, not a laboratory-frame
// divergence pair).  Multiplying a time component by m converts "per unit
// mass coordinate" to "per unit laboratory length"; the integral of
// m * (time component) over x equals the material charge.
//
// Laboratory-form residuals discretized here (all vanish on exact solutions):
//   continuity  m_t + (m v)_x
//   entropy     S_t + v S_x
//   momentum    (m v G/Gamma)_t + (m v^2 G/Gamma + p)_x,   p = S m^g Gamma^g
// and the entropy-shape constraints tying S(x) to the family:
//   exponential  S_x - q m S = 0
//   power        q m S S_xx + (1-q) m S_x^2 - q m_x S S_x = 0
#pragma once

#include <span>
#include <string>
#include <vector>

#include "relgas/claws.hpp"
#include "relgas/core.hpp"
#include "relgas/solver.hpp"

namespace relgas {

struct EulerianSnapshot {
  double t = 0.0;
  std::vector<double> xi;  // material coordinate of each sample
  std::vector<double> x;   // laboratory position (strictly increasing)
  std::vector<double> v;   // velocity
  std::vector<double> m;   // mass per laboratory length
  std::vector<double> n;   // rest-frame particle density, n = m * Gamma
  std::vector<double> S;   // entropy function S0(xi)
  std::size_t size() const { return x.size(); }
};

EulerianSnapshot to_eulerian(const SimState& s, const Grid& grid,
                             const EntropyProfile& profile, double gamma);
EulerianSnapshot to_eulerian(const Snapshot& snap, const Grid& grid,
                             const EntropyProfile& profile, double gamma);

// Resample all fields onto the given laboratory positions (each must lie
// within [x.front(), x.back()]; OutOfRange otherwise).
EulerianSnapshot resample(const EulerianSnapshot& snap,
                          std::span<const double> x_targets);

// nx evenly spaced positions spanning the snapshot.
std::vector<double> uniform_x_grid(const EulerianSnapshot& snap, int nx);

// nx evenly spaced positions inside the window covered by every snapshot,
// shrunk by margin_frac per side so resampling never extrapolates.
std::vector<double> common_x_grid(const std::vector<EulerianSnapshot>& snaps,
                                  int nx, double margin_frac = 0.02);

struct EulerianLawDensity {
  std::string name;               // matches the material law name
  std::vector<double> t_comp, x_comp;
};

// Per-law transcriptions for every law applicable to this profile/gamma.
std::vector<EulerianLawDensity> eulerian_densities(const EulerianSnapshot& snap,
                                                   const EntropyProfile& profile,
                                                   double gamma);

struct EulerianResiduals {
  std::vector<double> t;  // interior snapshot times
  std::vector<double> x;  // interior sample positions
  // Row-major (time x position).
  std::vector<double> continuity, entropy, momentum;
  double max_continuity = 0.0, max_entropy = 0.0, max_momentum = 0.0;
  double dt = 0.0, dx = 0.0;
};

// Centered second-order differences of the laboratory-form equations on a
// fixed uniform window resampled from the trajectory.  Needs >= 3 uniform
// snapshots and nx >= 8.
EulerianResiduals eulerian_residuals(const Trajectory& traj,
                                     const EntropyProfile& profile,
                                     double gamma, int nx,
                                     double margin_frac = 0.02);

struct ConstraintResult {
  std::string name;        // "exponential" or "power"
  std::vector<double> x;   // interior sample positions
  std::vector<double> r;
  double max_abs = 0.0;
};

// Family constraint evaluated on a uniformly spaced snapshot (as produced by
// resample onto uniform_x_grid).  Throws NotApplicable for families without
// a local constraint.
ConstraintResult constraint_residual(const EulerianSnapshot& snap,
                                     const EntropyProfile& profile,
                                     double gamma);

}  // namespace relgas
