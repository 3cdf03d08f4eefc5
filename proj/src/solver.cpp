#include "relgas/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "relgas/parallel.hpp"

namespace relgas {

void Grid::validate() const {
  if (!(xi_max > xi_min)) throw ConfigError("grid needs xi_max > xi_min");
  if (n < 8) throw ConfigError("grid needs at least 8 intervals");
}

void validate_setup(const Grid& g, const EntropyProfile& profile,
                    const SolverConfig& cfg) {
  g.validate();
  if (!(cfg.gamma > 1.0)) throw ConfigError("gamma must be > 1");
  if (!(cfg.cfl > 0.0 && cfg.cfl <= 1.0)) throw ConfigError("cfl must be in (0, 1]");
  if (!(cfg.t_end > 0.0)) throw ConfigError("t_end must be > 0");
  if (cfg.snapshot_stride < 1) throw ConfigError("snapshot_stride must be >= 1");
  if (!(cfg.eps_v > 0.0 && cfg.eps_v < 1.0))
    throw ConfigError("velocity margin must be in (0, 1)");
  if (!(cfg.eps_den > 0.0)) throw ConfigError("denominator guard must be > 0");
  if (!(cfg.dt_max_factor > 0.0)) throw ConfigError("dt_max_factor must be > 0");
  if (profile.family() == EntropyProfile::Family::power && !(g.xi_min > 0.0))
    throw ConfigError("power entropy profile requires xi_min > 0");
  // The exponential and power families are not periodic functions of xi, so
  // a periodic run would carry an entropy jump across the seam.
  if (g.boundary == Boundary::periodic &&
      (profile.family() == EntropyProfile::Family::exponential ||
       profile.family() == EntropyProfile::Family::power))
    throw ConfigError(
        "periodic boundary needs a constant (or custom periodic) entropy profile");
}

// ---------------------------------------------------------------------------
// Stencils

namespace {

void derivs_into(const std::vector<double>& u, const std::vector<double>& w,
                 const Grid& g, SpatialDerivs& out) {
  const int nn = g.num_nodes();
  const double h = g.dxi();
  out.phi_xi.resize(nn);
  out.phi_xixi.resize(nn);
  out.phi_txi.resize(nn);

  const double* pu = u.data();
  const double* pw = w.data();
  double* dxi = out.phi_xi.data();
  double* dxixi = out.phi_xixi.data();
  double* dtxi = out.phi_txi.data();

  if (g.boundary == Boundary::periodic) {
    par::for_index(nn, [&](std::int64_t j) {
      const int jm = j == 0 ? nn - 1 : int(j) - 1;
      const int jp = j == nn - 1 ? 0 : int(j) + 1;
      dxi[j] = 1.0 + (pu[jp] - pu[jm]) / (2.0 * h);
      dxixi[j] = (pu[jp] - 2.0 * pu[j] + pu[jm]) / (h * h);
      dtxi[j] = (pw[jp] - pw[jm]) / (2.0 * h);
    });
  } else {
    const int last = nn - 1;
    par::for_index(nn, [&](std::int64_t j) {
      if (j == 0) {
        dxi[0] = 1.0 + (-3.0 * pu[0] + 4.0 * pu[1] - pu[2]) / (2.0 * h);
        dxixi[0] = (2.0 * pu[0] - 5.0 * pu[1] + 4.0 * pu[2] - pu[3]) / (h * h);
        dtxi[0] = (-3.0 * pw[0] + 4.0 * pw[1] - pw[2]) / (2.0 * h);
      } else if (j == last) {
        dxi[last] =
            1.0 + (3.0 * pu[last] - 4.0 * pu[last - 1] + pu[last - 2]) / (2.0 * h);
        dxixi[last] = (2.0 * pu[last] - 5.0 * pu[last - 1] + 4.0 * pu[last - 2] -
                       pu[last - 3]) /
                      (h * h);
        dtxi[last] =
            (3.0 * pw[last] - 4.0 * pw[last - 1] + pw[last - 2]) / (2.0 * h);
      } else {
        dxi[j] = 1.0 + (pu[j + 1] - pu[j - 1]) / (2.0 * h);
        dxixi[j] = (pu[j + 1] - 2.0 * pu[j] + pu[j - 1]) / (h * h);
        dtxi[j] = (pw[j + 1] - pw[j - 1]) / (2.0 * h);
      }
    });
  }
}

void check_stretch(const SpatialDerivs& sd, const Grid& g, double t) {
  const int nn = g.num_nodes();
  for (int j = 0; j < nn; ++j)
    if (!(sd.phi_xi[j] > 0.0))
      throw NonPositiveStretch("phi_xi = " + std::to_string(sd.phi_xi[j]) +
                               " at node " + std::to_string(j) + ", t = " +
                               std::to_string(t));
}

enum : std::uint8_t {
  node_ok = 0,
  node_superluminal = 1,
  node_bad_stretch = 2,
  node_degenerate = 3,
  node_nonhyperbolic = 4,
};

[[noreturn]] void throw_node_error(std::uint8_t code, int j, double t) {
  const std::string where = " at node " + std::to_string(j) + ", t = " +
                            std::to_string(t);
  switch (code) {
    case node_superluminal: throw SuperluminalState("|w| reached 1" + where);
    case node_bad_stretch: throw NonPositiveStretch("phi_xi <= 0" + where);
    case node_degenerate:
      throw DegenerateDenominator("leading coefficient ~ 0" + where);
    case node_nonhyperbolic:
      throw LossOfHyperbolicity("complex characteristics" + where);
    default: throw BlowupDetected("unknown node failure" + where);
  }
}

void rethrow_first(const std::vector<std::uint8_t>& codes, double t) {
  for (int j = 0; j < int(codes.size()); ++j)
    if (codes[j] != node_ok) throw_node_error(codes[j], j, t);
}

// Shared per-(grid, profile) tables plus scratch buffers. Production path:
// run() builds one of these and reuses it for every stage of every step.
class Stepper {
public:
  Stepper(const Grid& g, const EntropyProfile& profile, const SolverConfig& cfg)
      : grid_(g), cfg_(cfg) {
    const int nn = g.num_nodes();
    s0_.resize(nn);
    s0p_.resize(nn);
    for (int j = 0; j < nn; ++j) {
      s0_[j] = profile.s0(g.node(j));
      s0p_[j] = profile.s0p(g.node(j));
      if (!(s0_[j] >= 0.0))
        throw DomainError("entropy negative at node " + std::to_string(j));
    }
    codes_.resize(nn);
    speed_.resize(nn);
  }

  void rhs(const SimState& s, std::vector<double>& du, std::vector<double>& dw) {
    const int nn = grid_.num_nodes();
    du.resize(nn);
    dw.resize(nn);
    derivs_into(s.u, s.w, grid_, sd_);
    const bool wall = grid_.boundary == Boundary::wall;
    const double vmax = 1.0 - cfg_.eps_v;
    const double gamma = cfg_.gamma;
    const double eps_den = cfg_.eps_den;
    std::fill(codes_.begin(), codes_.end(), std::uint8_t(node_ok));
    std::uint8_t* codes = codes_.data();
    const double* w = s.w.data();
    const double* pxi = sd_.phi_xi.data();
    const double* pxixi = sd_.phi_xixi.data();
    const double* ptxi = sd_.phi_txi.data();
    const double* s0 = s0_.data();
    const double* s0p = s0p_.data();
    double* pdu = du.data();
    double* pdw = dw.data();

    par::for_index(nn, [&](std::int64_t j) {
      pdu[j] = w[j];
      if (wall && (j == 0 || j == nn - 1)) {
        pdw[j] = 0.0;  // pinned wall node
        return;
      }
      if (!(std::abs(w[j]) < vmax)) {
        codes[j] = node_superluminal;
        pdw[j] = 0.0;
        return;
      }
      if (!(pxi[j] > 0.0)) {
        codes[j] = node_bad_stretch;
        pdw[j] = 0.0;
        return;
      }
      const QuasilinearCoeffs c = quasilinear_coeffs(w[j], pxi[j], s0[j], gamma);
      if (!(std::abs(c.a_tt) > eps_den)) {
        codes[j] = node_degenerate;
        pdw[j] = 0.0;
        return;
      }
      pdw[j] = -(c.b_txi * ptxi[j] + c.c_xixi * pxixi[j] + c.d_s0p * s0p[j]) /
               c.a_tt;
    });
    rethrow_first(codes_, s.t);
  }

  double max_char_speed(const SimState& s) {
    const int nn = grid_.num_nodes();
    derivs_into(s.u, s.w, grid_, sd_);
    const double vmax = 1.0 - cfg_.eps_v;
    const double gamma = cfg_.gamma;
    std::fill(codes_.begin(), codes_.end(), std::uint8_t(node_ok));
    std::uint8_t* codes = codes_.data();
    const double* w = s.w.data();
    const double* pxi = sd_.phi_xi.data();
    const double* s0 = s0_.data();
    double* spd = speed_.data();

    par::for_index(nn, [&](std::int64_t j) {
      spd[j] = 0.0;
      if (!(std::abs(w[j]) < vmax)) {
        codes[j] = node_superluminal;
        return;
      }
      if (!(pxi[j] > 0.0)) {
        codes[j] = node_bad_stretch;
        return;
      }
      const QuasilinearCoeffs c = quasilinear_coeffs(w[j], pxi[j], s0[j], gamma);
      const double disc = c.b_txi * c.b_txi - 4.0 * c.a_tt * c.c_xixi;
      const double scale =
          c.b_txi * c.b_txi + std::abs(4.0 * c.a_tt * c.c_xixi);
      if (disc < -1e-14 * scale) {
        codes[j] = node_nonhyperbolic;
        return;
      }
      if (!(std::abs(c.a_tt) > cfg_.eps_den)) {
        codes[j] = node_degenerate;
        return;
      }
      spd[j] = (std::abs(c.b_txi) + std::sqrt(std::max(disc, 0.0))) /
               (2.0 * std::abs(c.a_tt));
    });
    rethrow_first(codes_, s.t);
    double m = 0.0;
    for (int j = 0; j < nn; ++j) m = std::max(m, speed_[j]);
    return m;
  }

  double stable_dt(const SimState& s) {
    const double lam = max_char_speed(s);
    const double cap = cfg_.dt_max_factor * grid_.dxi();
    if (lam <= 0.0) return cap;
    return std::min(cfg_.cfl * grid_.dxi() / lam, cap);
  }

  void step(SimState& s, double dt) {
    const int nn = grid_.num_nodes();
    tmp_.u.resize(nn);
    tmp_.w.resize(nn);

    rhs(s, k1u_, k1w_);
    axpy(tmp_, s, 0.5 * dt, k1u_, k1w_);
    rhs(tmp_, k2u_, k2w_);
    axpy(tmp_, s, 0.5 * dt, k2u_, k2w_);
    rhs(tmp_, k3u_, k3w_);
    axpy(tmp_, s, dt, k3u_, k3w_);
    rhs(tmp_, k4u_, k4w_);

    double* u = s.u.data();
    double* w = s.w.data();
    const double c = dt / 6.0;
    const double* k1u = k1u_.data();
    const double* k2u = k2u_.data();
    const double* k3u = k3u_.data();
    const double* k4u = k4u_.data();
    const double* k1w = k1w_.data();
    const double* k2w = k2w_.data();
    const double* k3w = k3w_.data();
    const double* k4w = k4w_.data();
    par::for_index(nn, [&](std::int64_t j) {
      u[j] += c * (k1u[j] + 2.0 * k2u[j] + 2.0 * k3u[j] + k4u[j]);
      w[j] += c * (k1w[j] + 2.0 * k2w[j] + 2.0 * k3w[j] + k4w[j]);
    });
    s.t += dt;
  }

private:
  void axpy(SimState& out, const SimState& base, double a,
            const std::vector<double>& du, const std::vector<double>& dw) {
    const int nn = grid_.num_nodes();
    double* ou = out.u.data();
    double* ow = out.w.data();
    const double* bu = base.u.data();
    const double* bw = base.w.data();
    const double* pdu = du.data();
    const double* pdw = dw.data();
    par::for_index(nn, [&](std::int64_t j) {
      ou[j] = bu[j] + a * pdu[j];
      ow[j] = bw[j] + a * pdw[j];
    });
    out.t = base.t + a;
  }

  Grid grid_;
  SolverConfig cfg_;
  std::vector<double> s0_, s0p_;
  std::vector<std::uint8_t> codes_;
  std::vector<double> speed_;
  SpatialDerivs sd_;
  SimState tmp_;
  std::vector<double> k1u_, k1w_, k2u_, k2w_, k3u_, k3w_, k4u_, k4w_;
};

void check_state_size(const SimState& s, const Grid& g) {
  if (int(s.u.size()) != g.num_nodes() || int(s.w.size()) != g.num_nodes())
    throw DomainError("state size does not match grid (" +
                      std::to_string(s.u.size()) + " vs " +
                      std::to_string(g.num_nodes()) + " nodes)");
}

}  // namespace

SpatialDerivs spatial_derivs(const SimState& s, const Grid& g) {
  check_state_size(s, g);
  SpatialDerivs sd;
  derivs_into(s.u, s.w, g, sd);
  check_stretch(sd, g, s.t);
  return sd;
}

void rhs(const SimState& s, const Grid& g, const EntropyProfile& profile,
         const SolverConfig& cfg, std::vector<double>& du,
         std::vector<double>& dw) {
  check_state_size(s, g);
  Stepper(g, profile, cfg).rhs(s, du, dw);
}

double max_char_speed(const SimState& s, const Grid& g,
                      const EntropyProfile& profile, const SolverConfig& cfg) {
  check_state_size(s, g);
  return Stepper(g, profile, cfg).max_char_speed(s);
}

double stable_dt(const SimState& s, const Grid& g, const EntropyProfile& profile,
                 const SolverConfig& cfg) {
  check_state_size(s, g);
  return Stepper(g, profile, cfg).stable_dt(s);
}

void step_rk4(SimState& s, const Grid& g, const EntropyProfile& profile,
              const SolverConfig& cfg, double dt) {
  check_state_size(s, g);
  if (!(dt > 0.0)) throw DomainError("dt must be > 0");
  Stepper(g, profile, cfg).step(s, dt);
}

// ---------------------------------------------------------------------------
// Initial conditions

namespace {

// Static equilibrium has uniform pressure: phi_xi proportional to S0^(1/gamma).
// The map is normalized so the images of the domain ends stay put.
std::vector<double> equilibrium_displacement(const Grid& g,
                                             const EntropyProfile& profile,
                                             double gamma) {
  const int nn = g.num_nodes();
  std::vector<double> cum(nn, 0.0);  // integral of S0^(1/gamma) up to node j

  auto closed_form = [&](double xi) -> double {
    const double a = g.xi_min;
    switch (profile.family()) {
      case EntropyProfile::Family::constant:
        return std::pow(profile.param(), 1.0 / gamma) * (xi - a);
      case EntropyProfile::Family::exponential: {
        const double r = profile.param() / gamma;
        if (r == 0.0) return xi - a;
        return (std::exp(r * xi) - std::exp(r * a)) / r;
      }
      case EntropyProfile::Family::power: {
        const double al = profile.param() / gamma;
        if (al == -1.0) return std::log(xi / a);
        return (std::pow(xi, al + 1.0) - std::pow(a, al + 1.0)) / (al + 1.0);
      }
      case EntropyProfile::Family::custom: return 0.0;  // handled below
    }
    return 0.0;
  };

  if (profile.family() == EntropyProfile::Family::custom) {
    // Cumulative Simpson, each grid cell split into 8 panels.
    auto f = [&](double xi) { return std::pow(profile.s0(xi), 1.0 / gamma); };
    for (int j = 1; j < nn; ++j) {
      const double a = g.node(j - 1), b = g.node(j);
      const double hh = (b - a) / 8.0;
      double acc = 0.0;
      for (int k = 0; k < 8; ++k) {
        const double x0 = a + hh * k;
        acc += hh / 6.0 * (f(x0) + 4.0 * f(x0 + 0.5 * hh) + f(x0 + hh));
      }
      cum[j] = cum[j - 1] + acc;
    }
  } else {
    for (int j = 0; j < nn; ++j) cum[j] = closed_form(g.node(j));
  }

  // Periodic grids lack the right-endpoint node; extend the integral there.
  double total;
  if (g.boundary == Boundary::periodic) {
    if (profile.family() == EntropyProfile::Family::custom) {
      auto f = [&](double xi) { return std::pow(profile.s0(xi), 1.0 / gamma); };
      const double a = g.node(nn - 1), b = g.xi_max;
      const double hh = (b - a) / 8.0;
      double acc = 0.0;
      for (int k = 0; k < 8; ++k) {
        const double x0 = a + hh * k;
        acc += hh / 6.0 * (f(x0) + 4.0 * f(x0 + 0.5 * hh) + f(x0 + hh));
      }
      total = cum[nn - 1] + acc;
    } else {
      total = closed_form(g.xi_max);
    }
  } else {
    total = cum[nn - 1];
  }
  if (!(total > 0.0))
    throw DomainError("equilibrium stretch integral is not positive");

  std::vector<double> u(nn);
  const double L = g.length();
  for (int j = 0; j < nn; ++j)
    u[j] = g.xi_min + L * cum[j] / total - g.node(j);
  return u;
}

}  // namespace

SimState make_initial_state(const Grid& g, const EntropyProfile& profile,
                            double gamma, const IcSpec& ic) {
  g.validate();
  const int nn = g.num_nodes();
  SimState s;
  s.t = 0.0;
  s.u.assign(nn, 0.0);
  s.w.assign(nn, 0.0);
  const double L = g.length();
  const double k = 2.0 * M_PI * ic.mode / L;

  using P = IcSpec::Preset;
  switch (ic.preset) {
    case P::rest:
      break;
    case P::sine_displacement:
      for (int j = 0; j < nn; ++j)
        s.u[j] = ic.amplitude * std::sin(k * (g.node(j) - g.xi_min));
      break;
    case P::sine_velocity:
      for (int j = 0; j < nn; ++j)
        s.w[j] = ic.amplitude * std::sin(k * (g.node(j) - g.xi_min));
      break;
    case P::gaussian_velocity:
      for (int j = 0; j < nn; ++j) {
        const double d = (g.node(j) - ic.center) / ic.sigma;
        s.w[j] = ic.amplitude * std::exp(-0.5 * d * d);
      }
      break;
    case P::equilibrium:
      s.u = equilibrium_displacement(g, profile, gamma);
      break;
    case P::equilibrium_sine_velocity:
      s.u = equilibrium_displacement(g, profile, gamma);
      for (int j = 0; j < nn; ++j)
        s.w[j] = ic.amplitude * std::sin(k * (g.node(j) - g.xi_min));
      break;
    case P::equilibrium_gaussian_velocity:
      s.u = equilibrium_displacement(g, profile, gamma);
      for (int j = 0; j < nn; ++j) {
        const double d = (g.node(j) - ic.center) / ic.sigma;
        s.w[j] = ic.amplitude * std::exp(-0.5 * d * d);
      }
      break;
  }

  for (int j = 0; j < nn; ++j)
    if (!(std::abs(s.w[j]) < 1.0))
      throw DomainError("initial velocity reaches light speed at node " +
                        std::to_string(j));
  // Wall runs pin the end nodes; a velocity there would be discarded.
  if (g.boundary == Boundary::wall) {
    s.w[0] = 0.0;
    s.w[nn - 1] = 0.0;
  }
  return s;
}

// ---------------------------------------------------------------------------
// Time integration

Trajectory run(const SimState& ic, const Grid& g, const EntropyProfile& profile,
               const SolverConfig& cfg) {
  validate_setup(g, profile, cfg);
  check_state_size(ic, g);

  Trajectory traj;
  traj.grid = g;
  traj.stride = cfg.snapshot_stride;

  SimState state = ic;
  state.t = 0.0;

  try {
    Stepper st(g, profile, cfg);

    double dt0;
    if (cfg.dt_override) {
      dt0 = *cfg.dt_override;
      if (!(dt0 > 0.0)) throw ConfigError("dt_override must be > 0");
      traj.events.push_back("dt_override in effect; stability guard bypassed");
    } else {
      dt0 = st.stable_dt(state);
      if (dt0 >= cfg.dt_max_factor * g.dxi() - 1e-300)
        traj.events.push_back("dt capped at dt_max_factor * dxi");
    }

    long nsteps = long(std::ceil(cfg.t_end / dt0 * (1.0 - 1e-12)));
    nsteps = std::max(nsteps, long(1));
    const long stride = cfg.snapshot_stride;
    nsteps = ((nsteps + stride - 1) / stride) * stride;
    const double dt = cfg.t_end / double(nsteps);
    traj.dt = dt;

    const double dxi = g.dxi();
    for (long step = 0; step < nsteps; ++step) {
      if (step % stride == 0) {
        traj.snaps.push_back({state.t, state.u, state.w});
      }
      if (!cfg.dt_override) {
        // The step is fixed; abort if the state has sped up past the
        // one-cell-per-step line rather than integrate an unstable system.
        const double lam = st.max_char_speed(state);
        if (dt * lam / dxi > 1.0)
          throw UnstableTimestep("dt * max_speed / dxi = " +
                                 std::to_string(dt * lam / dxi) + " > 1 at t = " +
                                 std::to_string(state.t));
      }
      st.step(state, dt);
      state.t = dt * double(step + 1);
      for (int j = 0; j < g.num_nodes(); ++j) {
        if (!std::isfinite(state.u[j]) || !std::isfinite(state.w[j]))
          throw BlowupDetected("non-finite state at node " + std::to_string(j) +
                               ", t = " + std::to_string(state.t));
        if (!(std::abs(state.w[j]) < 1.0 - cfg.eps_v))
          throw SuperluminalState("|w| = " + std::to_string(std::abs(state.w[j])) +
                                  " at node " + std::to_string(j) + ", t = " +
                                  std::to_string(state.t));
      }
    }
    traj.snaps.push_back({cfg.t_end, state.u, state.w});
  } catch (const Error& e) {
    traj.failed = true;
    traj.failure = e.what();
    traj.events.push_back(std::string("guard: ") + e.what());
  }
  return traj;
}

}  // namespace relgas
