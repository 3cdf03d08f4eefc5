#include "relgas/diagnostics.hpp"

#include <cmath>
#include <cstdint>

#include "relgas/parallel.hpp"

namespace relgas {

double ResidualField::max_abs() const {
  double m = 0.0;
  for (double x : r) m = std::max(m, std::abs(x));
  return m;
}

double Series::max_abs() const {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

namespace {

void require_uniform_snaps(const Trajectory& traj) {
  if (traj.snaps.size() < 3)
    throw InsufficientSnapshots("need >= 3 snapshots, got " +
                                std::to_string(traj.snaps.size()));
  const double dt = traj.snap_dt();
  if (!(dt > 0.0)) throw InsufficientSnapshots("snapshot spacing is not positive");
  for (std::size_t k = 1; k < traj.snaps.size(); ++k) {
    const double gap = traj.snaps[k].t - traj.snaps[k - 1].t;
    if (std::abs(gap - dt) > 1e-9 * std::max(1.0, std::abs(traj.snaps.back().t)))
      throw InsufficientSnapshots("snapshots are not uniform in t");
  }
}

Jet1 node_jet(const Grid& g, const Snapshot& snap, const SpatialDerivs& sd,
              int j) {
  Jet1 jet;
  jet.xi = g.node(j);
  jet.t = snap.t;
  jet.phi = jet.xi + snap.u[j];
  jet.phi_t = snap.w[j];
  jet.phi_xi = sd.phi_xi[j];
  return jet;
}

// Seam image of node 0 on a periodic grid: same state, phi shifted by the
// domain length.
Jet1 seam_jet(const Grid& g, const Snapshot& snap, const SpatialDerivs& sd) {
  Jet1 jet;
  jet.xi = g.xi_max;
  jet.t = snap.t;
  jet.phi = g.xi_max + snap.u[0];
  jet.phi_t = snap.w[0];
  jet.phi_xi = sd.phi_xi[0];
  return jet;
}

struct DensityTables {
  // Row-major (snapshot x node); seam column appended for periodic grids.
  int nn = 0;
  bool has_seam = false;
  std::vector<double> tt, txi;
  double& at_t(std::size_t k, int j) { return tt[k * cols() + j]; }
  double& at_xi(std::size_t k, int j) { return txi[k * cols() + j]; }
  double t_of(std::size_t k, int j) const { return tt[k * cols() + j]; }
  double xi_of(std::size_t k, int j) const { return txi[k * cols() + j]; }
  int cols() const { return nn + (has_seam ? 1 : 0); }
};

DensityTables density_tables(const ConservationLaw& law, const Trajectory& traj,
                             const EntropyProfile& profile, double gamma) {
  const Grid& g = traj.grid;
  const std::size_t K = traj.snaps.size();
  DensityTables tab;
  tab.nn = g.num_nodes();
  tab.has_seam = g.boundary == Boundary::periodic;
  tab.tt.resize(K * tab.cols());
  tab.txi.resize(K * tab.cols());

  // Stretch fields per snapshot first (serial: cheap and allocation-heavy),
  // then density evaluation in parallel over the whole lattice.
  std::vector<SpatialDerivs> sds(K);
  for (std::size_t k = 0; k < K; ++k) {
    SimState s{traj.snaps[k].t, traj.snaps[k].u, traj.snaps[k].w};
    sds[k] = spatial_derivs(s, g);
  }

  const int cols = tab.cols();
  std::vector<std::uint8_t> bad(K, 0);
  par::for_index(std::int64_t(K), [&](std::int64_t k) {
    const Snapshot& snap = traj.snaps[k];
    for (int j = 0; j < tab.nn; ++j) {
      Jet1 jet = node_jet(g, snap, sds[k], j);
      const double s0 = profile.s0(jet.xi);
      tab.tt[k * cols + j] = law.density_t(jet, s0, gamma);
      tab.txi[k * cols + j] = law.density_xi(jet, s0, gamma);
    }
    if (tab.has_seam) {
      Jet1 jet = seam_jet(g, snap, sds[k]);
      const double s0 = profile.s0(jet.xi);
      tab.tt[k * cols + tab.nn] = law.density_t(jet, s0, gamma);
      tab.txi[k * cols + tab.nn] = law.density_xi(jet, s0, gamma);
    }
  });
  return tab;
}

double charge_from_row(const DensityTables& tab, std::size_t k, const Grid& g) {
  const double h = g.dxi();
  double acc = 0.0;
  if (g.boundary == Boundary::periodic) {
    // Closed trapezoid [node 0 ... seam image of node 0].
    acc = 0.5 * (tab.t_of(k, 0) + tab.t_of(k, tab.nn));
    for (int j = 1; j < tab.nn; ++j) acc += tab.t_of(k, j);
  } else {
    acc = 0.5 * (tab.t_of(k, 0) + tab.t_of(k, tab.nn - 1));
    for (int j = 1; j < tab.nn - 1; ++j) acc += tab.t_of(k, j);
  }
  return acc * h;
}

void check_applicable(const ConservationLaw& law, const EntropyProfile& profile,
                      double gamma) {
  if (law.applicable && !law.applicable(profile, gamma))
    throw NotApplicable("law " + law.name +
                        " does not apply to this profile/gamma");
}

}  // namespace

double global_charge(const ConservationLaw& law, const SimState& s,
                     const Grid& g, const EntropyProfile& profile,
                     double gamma) {
  check_applicable(law, profile, gamma);
  const SpatialDerivs sd = spatial_derivs(s, g);
  const int nn = g.num_nodes();
  const double h = g.dxi();
  Snapshot snap{s.t, s.u, s.w};

  auto density = [&](const Jet1& jet) {
    return law.density_t(jet, profile.s0(jet.xi), gamma);
  };

  double acc = 0.0;
  if (g.boundary == Boundary::periodic) {
    acc = 0.5 * (density(node_jet(g, snap, sd, 0)) + density(seam_jet(g, snap, sd)));
    for (int j = 1; j < nn; ++j) acc += density(node_jet(g, snap, sd, j));
  } else {
    acc = 0.5 * (density(node_jet(g, snap, sd, 0)) +
                 density(node_jet(g, snap, sd, nn - 1)));
    for (int j = 1; j < nn - 1; ++j) acc += density(node_jet(g, snap, sd, j));
  }
  return acc * h;
}

ResidualField divergence_residual(const ConservationLaw& law,
                                  const Trajectory& traj,
                                  const EntropyProfile& profile, double gamma) {
  check_applicable(law, profile, gamma);
  require_uniform_snaps(traj);
  const Grid& g = traj.grid;
  const DensityTables tab = density_tables(law, traj, profile, gamma);
  const std::size_t K = traj.snaps.size();
  const double dts = traj.snap_dt();
  const double h = g.dxi();
  const int nn = tab.nn;

  // Periodic grids wrap the flux stencil, except for densities carrying phi
  // or t explicitly: those are not periodic across the seam, so only the
  // interior is sampled.
  const bool wrap = g.boundary == Boundary::periodic && !law.time_dependent;

  ResidualField f;
  f.first_node = wrap ? 0 : 1;
  f.num_nodes = wrap ? nn : nn - 2;
  f.t.reserve(K - 2);
  for (std::size_t k = 1; k + 1 < K; ++k) f.t.push_back(traj.snaps[k].t);
  f.r.resize(f.t.size() * f.num_nodes);

  par::for_index(std::int64_t(f.t.size()), [&](std::int64_t row) {
    const std::size_t k = row + 1;
    for (int c = 0; c < f.num_nodes; ++c) {
      const int j = f.first_node + c;
      const int jm = wrap ? (j == 0 ? nn - 1 : j - 1) : j - 1;
      const int jp = wrap ? (j == nn - 1 ? 0 : j + 1) : j + 1;
      const double ddt = (tab.t_of(k + 1, j) - tab.t_of(k - 1, j)) / (2.0 * dts);
      const double ddxi = (tab.xi_of(k, jp) - tab.xi_of(k, jm)) / (2.0 * h);
      f.r[row * f.num_nodes + c] = ddt + ddxi;
    }
  });
  return f;
}

Series charge_series(const ConservationLaw& law, const Trajectory& traj,
                     const EntropyProfile& profile, double gamma) {
  check_applicable(law, profile, gamma);
  if (traj.snaps.empty()) throw InsufficientSnapshots("trajectory has no snapshots");
  const DensityTables tab = density_tables(law, traj, profile, gamma);
  Series s;
  for (std::size_t k = 0; k < traj.snaps.size(); ++k) {
    s.t.push_back(traj.snaps[k].t);
    s.v.push_back(charge_from_row(tab, k, traj.grid));
  }
  return s;
}

Series balance_residual(const ConservationLaw& law, const Trajectory& traj,
                        const EntropyProfile& profile, double gamma) {
  check_applicable(law, profile, gamma);
  require_uniform_snaps(traj);
  const Grid& g = traj.grid;
  const DensityTables tab = density_tables(law, traj, profile, gamma);
  const std::size_t K = traj.snaps.size();
  const double dts = traj.snap_dt();
  const int right = g.boundary == Boundary::periodic ? tab.nn : tab.nn - 1;

  std::vector<double> q(K);
  for (std::size_t k = 0; k < K; ++k) q[k] = charge_from_row(tab, k, g);

  Series s;
  for (std::size_t k = 1; k + 1 < K; ++k) {
    const double dq = (q[k + 1] - q[k - 1]) / (2.0 * dts);
    const double flux = tab.xi_of(k, right) - tab.xi_of(k, 0);
    s.t.push_back(traj.snaps[k].t);
    s.v.push_back(dq + flux);
  }
  return s;
}

double estimate_order(std::span<const double> h, std::span<const double> err) {
  if (h.size() != err.size() || h.size() < 2)
    throw InsufficientSamples("order estimate needs >= 2 matching points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = double(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (!(h[i] > 0.0) || !(err[i] > 0.0))
      throw DomainError("order estimate needs positive step sizes and errors");
    const double x = std::log(h[i]);
    const double y = std::log(err[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw DomainError("order estimate needs distinct step sizes");
  return (n * sxy - sx * sy) / denom;
}

DiagnosticsReport diagnose(const Trajectory& traj, const EntropyProfile& profile,
                           double gamma) {
  require_uniform_snaps(traj);
  DiagnosticsReport rep;
  rep.snap_dt = traj.snap_dt();
  for (const ConservationLaw& law : builtin_laws(profile, gamma)) {
    LawDiagnostics d;
    d.law = law.name;
    d.note = law.note;
    d.charge = charge_series(law, traj, profile, gamma);
    d.balance = balance_residual(law, traj, profile, gamma);
    const ResidualField f = divergence_residual(law, traj, profile, gamma);
    d.max_div.t = f.t;
    d.max_div.v.resize(f.t.size());
    for (std::size_t k = 0; k < f.t.size(); ++k) {
      double m = 0.0;
      for (int c = 0; c < f.num_nodes; ++c)
        m = std::max(m, std::abs(f.at(k, c)));
      d.max_div.v[k] = m;
    }
    d.max_balance = d.balance.max_abs();
    d.max_div_all = f.max_abs();

    // Drift normalization: |Q(0)| unless the initial charge nearly cancels
    // (odd densities), then the L1 charge.
    double l1 = 0.0;
    {
      const Grid& g = traj.grid;
      SimState s0{traj.snaps[0].t, traj.snaps[0].u, traj.snaps[0].w};
      const SpatialDerivs sd = spatial_derivs(s0, g);
      const int nn = g.num_nodes();
      for (int j = 0; j < nn; ++j) {
        Jet1 jet = node_jet(g, traj.snaps[0], sd, j);
        l1 += std::abs(law.density_t(jet, profile.s0(jet.xi), gamma)) * g.dxi();
      }
    }
    const double norm = std::max({std::abs(d.charge.v[0]), l1, 1e-300});
    double drift = 0.0;
    for (double qv : d.charge.v)
      drift = std::max(drift, std::abs(qv - d.charge.v[0]));
    d.drift_rel = drift / norm;
    rep.laws.push_back(std::move(d));
  }
  return rep;
}

}  // namespace relgas
