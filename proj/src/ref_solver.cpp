#include "relgas/ref_solver.hpp"

#include <cmath>

namespace relgas::ref {

namespace {

void check_size(const SimState& s, const Grid& g) {
  if (int(s.u.size()) != g.num_nodes() || int(s.w.size()) != g.num_nodes())
    throw DomainError("state size does not match grid (" +
                      std::to_string(s.u.size()) + " vs " +
                      std::to_string(g.num_nodes()) + " nodes)");
}

SpatialDerivs derivs(const SimState& s, const Grid& g) {
  const int nn = g.num_nodes();
  const double h = g.dxi();
  const std::vector<double>& u = s.u;
  const std::vector<double>& w = s.w;
  SpatialDerivs sd;
  sd.phi_xi.resize(nn);
  sd.phi_xixi.resize(nn);
  sd.phi_txi.resize(nn);
  if (g.boundary == Boundary::periodic) {
    for (int j = 0; j < nn; ++j) {
      const int jm = j == 0 ? nn - 1 : j - 1;
      const int jp = j == nn - 1 ? 0 : j + 1;
      sd.phi_xi[j] = 1.0 + (u[jp] - u[jm]) / (2.0 * h);
      sd.phi_xixi[j] = (u[jp] - 2.0 * u[j] + u[jm]) / (h * h);
      sd.phi_txi[j] = (w[jp] - w[jm]) / (2.0 * h);
    }
  } else {
    const int last = nn - 1;
    sd.phi_xi[0] = 1.0 + (-3.0 * u[0] + 4.0 * u[1] - u[2]) / (2.0 * h);
    sd.phi_xixi[0] = (2.0 * u[0] - 5.0 * u[1] + 4.0 * u[2] - u[3]) / (h * h);
    sd.phi_txi[0] = (-3.0 * w[0] + 4.0 * w[1] - w[2]) / (2.0 * h);
    for (int j = 1; j < last; ++j) {
      sd.phi_xi[j] = 1.0 + (u[j + 1] - u[j - 1]) / (2.0 * h);
      sd.phi_xixi[j] = (u[j + 1] - 2.0 * u[j] + u[j - 1]) / (h * h);
      sd.phi_txi[j] = (w[j + 1] - w[j - 1]) / (2.0 * h);
    }
    sd.phi_xi[last] =
        1.0 + (3.0 * u[last] - 4.0 * u[last - 1] + u[last - 2]) / (2.0 * h);
    sd.phi_xixi[last] = (2.0 * u[last] - 5.0 * u[last - 1] + 4.0 * u[last - 2] -
                         u[last - 3]) /
                        (h * h);
    sd.phi_txi[last] =
        (3.0 * w[last] - 4.0 * w[last - 1] + w[last - 2]) / (2.0 * h);
  }
  return sd;
}

std::string at(int j, double t) {
  return " at node " + std::to_string(j) + ", t = " + std::to_string(t);
}

}  // namespace

SpatialDerivs spatial_derivs(const SimState& s, const Grid& g) {
  check_size(s, g);
  SpatialDerivs sd = derivs(s, g);
  for (int j = 0; j < g.num_nodes(); ++j)
    if (!(sd.phi_xi[j] > 0.0))
      throw NonPositiveStretch("phi_xi = " + std::to_string(sd.phi_xi[j]) +
                               at(j, s.t));
  return sd;
}

void rhs(const SimState& s, const Grid& g, const EntropyProfile& profile,
         const SolverConfig& cfg, std::vector<double>& du,
         std::vector<double>& dw) {
  check_size(s, g);
  const int nn = g.num_nodes();
  du.resize(nn);
  dw.resize(nn);
  const SpatialDerivs sd = derivs(s, g);
  const bool wall = g.boundary == Boundary::wall;
  const double vmax = 1.0 - cfg.eps_v;
  for (int j = 0; j < nn; ++j) {
    du[j] = s.w[j];
    if (wall && (j == 0 || j == nn - 1)) {
      dw[j] = 0.0;
      continue;
    }
    if (!(std::abs(s.w[j]) < vmax))
      throw SuperluminalState("|w| reached 1" + at(j, s.t));
    if (!(sd.phi_xi[j] > 0.0))
      throw NonPositiveStretch("phi_xi <= 0" + at(j, s.t));
    const double xi = g.node(j);
    const QuasilinearCoeffs c =
        quasilinear_coeffs(s.w[j], sd.phi_xi[j], profile.s0(xi), cfg.gamma);
    if (!(std::abs(c.a_tt) > cfg.eps_den))
      throw DegenerateDenominator("leading coefficient ~ 0" + at(j, s.t));
    dw[j] = -(c.b_txi * sd.phi_txi[j] + c.c_xixi * sd.phi_xixi[j] +
              c.d_s0p * profile.s0p(xi)) /
            c.a_tt;
  }
}

double max_char_speed(const SimState& s, const Grid& g,
                      const EntropyProfile& profile, const SolverConfig& cfg) {
  check_size(s, g);
  const SpatialDerivs sd = derivs(s, g);
  const double vmax = 1.0 - cfg.eps_v;
  double m = 0.0;
  for (int j = 0; j < g.num_nodes(); ++j) {
    if (!(std::abs(s.w[j]) < vmax))
      throw SuperluminalState("|w| reached 1" + at(j, s.t));
    if (!(sd.phi_xi[j] > 0.0))
      throw NonPositiveStretch("phi_xi <= 0" + at(j, s.t));
    const QuasilinearCoeffs c = quasilinear_coeffs(
        s.w[j], sd.phi_xi[j], profile.s0(g.node(j)), cfg.gamma);
    const double disc = c.b_txi * c.b_txi - 4.0 * c.a_tt * c.c_xixi;
    const double scale = c.b_txi * c.b_txi + std::abs(4.0 * c.a_tt * c.c_xixi);
    if (disc < -1e-14 * scale)
      throw LossOfHyperbolicity("complex characteristics" + at(j, s.t));
    if (!(std::abs(c.a_tt) > cfg.eps_den))
      throw DegenerateDenominator("leading coefficient ~ 0" + at(j, s.t));
    const double spd = (std::abs(c.b_txi) + std::sqrt(std::max(disc, 0.0))) /
                       (2.0 * std::abs(c.a_tt));
    m = std::max(m, spd);
  }
  return m;
}

void step_rk4(SimState& s, const Grid& g, const EntropyProfile& profile,
              const SolverConfig& cfg, double dt) {
  check_size(s, g);
  if (!(dt > 0.0)) throw DomainError("dt must be > 0");
  const int nn = g.num_nodes();
  std::vector<double> k1u(nn), k1w(nn), k2u(nn), k2w(nn), k3u(nn), k3w(nn),
      k4u(nn), k4w(nn);
  SimState tmp;
  tmp.u.resize(nn);
  tmp.w.resize(nn);

  auto axpy = [&](const SimState& base, double a, const std::vector<double>& du,
                  const std::vector<double>& dw) {
    for (int j = 0; j < nn; ++j) {
      tmp.u[j] = base.u[j] + a * du[j];
      tmp.w[j] = base.w[j] + a * dw[j];
    }
    tmp.t = base.t + a;
  };

  ref::rhs(s, g, profile, cfg, k1u, k1w);
  axpy(s, 0.5 * dt, k1u, k1w);
  ref::rhs(tmp, g, profile, cfg, k2u, k2w);
  axpy(s, 0.5 * dt, k2u, k2w);
  ref::rhs(tmp, g, profile, cfg, k3u, k3w);
  axpy(s, dt, k3u, k3w);
  ref::rhs(tmp, g, profile, cfg, k4u, k4w);

  const double c = dt / 6.0;
  for (int j = 0; j < nn; ++j) {
    s.u[j] += c * (k1u[j] + 2.0 * k2u[j] + 2.0 * k3u[j] + k4u[j]);
    s.w[j] += c * (k1w[j] + 2.0 * k2w[j] + 2.0 * k3w[j] + k4w[j]);
  }
  s.t += dt;
}

}  // namespace relgas::ref
