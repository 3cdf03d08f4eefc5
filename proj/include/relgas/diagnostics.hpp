#pragma once

#include <span>
#include <string>
#include <vector>

#include "relgas/claws.hpp"
#include "relgas/solver.hpp"

// Discrete verification of conservation laws on trajectories. All stencils
// are centered and second order; temporal endpoints (where no centered
// difference exists) are excluded from the max norms.

namespace relgas {

// Row-major field over (interior snapshot time) x (node subset).
struct ResidualField {
  std::vector<double> t;       // interior snapshot times
  int first_node = 0;          // node index of column 0
  int num_nodes = 0;
  std::vector<double> r;       // size t.size() * num_nodes
  double max_abs() const;
  double at(std::size_t k, int j) const { return r[k * num_nodes + j]; }
};

struct Series {
  std::vector<double> t;
  std::vector<double> v;
  double max_abs() const;
};

// Trapezoid of T^t over the domain. On periodic grids the missing right
// endpoint is closed with the seam image of node 0 (phi shifted by the
// domain length), which matters for densities carrying phi explicitly.
double global_charge(const ConservationLaw& law, const SimState& s,
                     const Grid& g, const EntropyProfile& profile, double gamma);

// delta_t T^t + delta_xi T^xi on the interior of the snapshot lattice.
// O(dxi^2 + dt^2) for exact solutions. Needs >= 3 snapshots.
ResidualField divergence_residual(const ConservationLaw& law,
                                  const Trajectory& traj,
                                  const EntropyProfile& profile, double gamma);

// b(t_k) = dQ/dt (centered) + T^xi(right end) - T^xi(left end).
Series balance_residual(const ConservationLaw& law, const Trajectory& traj,
                        const EntropyProfile& profile, double gamma);

Series charge_series(const ConservationLaw& law, const Trajectory& traj,
                     const EntropyProfile& profile, double gamma);

// Least-squares slope p of log(err) against log(h): err ~ C h^p.
double estimate_order(std::span<const double> h, std::span<const double> err);

struct LawDiagnostics {
  std::string law;
  Series charge;
  Series balance;       // interior times
  Series max_div;       // max |divergence residual| per interior time
  double drift_rel = 0.0;
  double max_balance = 0.0;
  double max_div_all = 0.0;
  std::string note;
};

struct DiagnosticsReport {
  double snap_dt = 0.0;
  std::vector<LawDiagnostics> laws;
};

// Runs every applicable law through the three diagnostics. The relative
// drift is |Q(t) - Q(0)| normalized by max(|Q(0)|, integral of |T^t(0)|).
DiagnosticsReport diagnose(const Trajectory& traj, const EntropyProfile& profile,
                           double gamma);

}  // namespace relgas
