#include "relgas/bridge.hpp"

#include <algorithm>
#include <cmath>

#include "relgas/parallel.hpp"
#include "relgas/pchip.hpp"
#include "relgas/symmetry.hpp"

namespace relgas {

namespace {

EulerianSnapshot convert(double t, std::span<const double> u,
                         std::span<const double> w, const Grid& grid,
                         const EntropyProfile& profile, double gamma) {
  SimState s{t, {u.begin(), u.end()}, {w.begin(), w.end()}};
  const SpatialDerivs sd = spatial_derivs(s, grid);
  const int nn = grid.num_nodes();
  EulerianSnapshot out;
  out.t = t;
  out.xi.resize(nn);
  out.x.resize(nn);
  out.v.resize(nn);
  out.m.resize(nn);
  out.n.resize(nn);
  out.S.resize(nn);
  for (int j = 0; j < nn; ++j) {
    const double xi = grid.node(j);
    const double stretch = sd.phi_xi[j];
    if (!(stretch > 0.0))
      throw NonPositiveStretch("stretch " + std::to_string(stretch) +
                               " at node " + std::to_string(j));
    out.xi[j] = xi;
    out.x[j] = xi + u[j];
    out.v[j] = w[j];
    out.m[j] = 1.0 / stretch;
    out.n[j] = out.m[j] * gamma_factor(w[j]);
    out.S[j] = profile.s0(xi);
  }
  (void)gamma;
  return out;
}

double lab_g(double v, double m, double S, double gamma) {
  return g_factor(v, 1.0 / m, S, gamma);
}

double lab_pressure(double v, double m, double S, double gamma) {
  const double gam = gamma_factor(v);
  return S * std::pow(m * gam, gamma);
}

// Not-a-knot cubic spline on non-uniform knots. Used only to resample fields
// for the residual stencils: unlike the shape-preserving interpolant backing
// the public resample(), its error is O(h^4) everywhere, including at data
// extrema, so differencing the resampled values stays second-order accurate.
class Spline {
 public:
  Spline(std::span<const double> x, std::span<const double> y)
      : x_(x.begin(), x.end()), y_(y.begin(), y.end()) {
    const std::size_t n = x_.size();
    if (n < 4) throw DomainError("spline needs >= 4 knots");
    for (std::size_t i = 1; i < n; ++i)
      if (!(x_[i] > x_[i - 1]))
        throw DomainError("spline knots must be strictly increasing");
    std::vector<double> h(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) h[i] = x_[i + 1] - x_[i];

    // Second-derivative moments M_i; interior continuity rows with the two
    // end moments eliminated via third-derivative continuity at the first
    // and last interior knots.
    const std::size_t m = n - 2;  // unknowns M_1 .. M_(n-2)
    std::vector<double> a(m), b(m), c(m), r(m);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      a[i - 1] = h[i - 1] / 6.0;
      b[i - 1] = (h[i - 1] + h[i]) / 3.0;
      c[i - 1] = h[i] / 6.0;
      r[i - 1] = (y_[i + 1] - y_[i]) / h[i] - (y_[i] - y_[i - 1]) / h[i - 1];
    }
    // M_0 = ((h0+h1) M_1 - h0 M_2) / h1 folded into the first row.
    b[0] += a[0] * (h[0] + h[1]) / h[1];
    c[0] -= a[0] * h[0] / h[1];
    a[0] = 0.0;
    // Mirror image at the other end.
    const std::size_t e = m - 1;
    b[e] += c[e] * (h[n - 3] + h[n - 2]) / h[n - 3];
    a[e] -= c[e] * h[n - 2] / h[n - 3];
    c[e] = 0.0;

    for (std::size_t i = 1; i < m; ++i) {  // Thomas elimination
      const double f = a[i] / b[i - 1];
      b[i] -= f * c[i - 1];
      r[i] -= f * r[i - 1];
    }
    M_.assign(n, 0.0);
    M_[n - 2] = r[e] / b[e];
    for (std::size_t i = m - 1; i-- > 0;)
      M_[i + 1] = (r[i] - c[i] * M_[i + 2]) / b[i];
    M_[0] = ((h[0] + h[1]) * M_[1] - h[0] * M_[2]) / h[1];
    M_[n - 1] = ((h[n - 3] + h[n - 2]) * M_[n - 2] - h[n - 2] * M_[n - 3]) /
                h[n - 3];
  }

  double operator()(double x) const {
    if (x < x_.front() || x > x_.back())
      throw OutOfRange("spline evaluation outside the knot range");
    std::size_t i =
        std::upper_bound(x_.begin(), x_.end(), x) - x_.begin();
    i = std::min(std::max<std::size_t>(i, 1), x_.size() - 1) - 1;
    const double h = x_[i + 1] - x_[i];
    const double A = x_[i + 1] - x, B = x - x_[i];
    return M_[i] * A * A * A / (6.0 * h) + M_[i + 1] * B * B * B / (6.0 * h) +
           (y_[i] / h - M_[i] * h / 6.0) * A +
           (y_[i + 1] / h - M_[i + 1] * h / 6.0) * B;
  }

 private:
  std::vector<double> x_, y_, M_;
};

EulerianSnapshot resample_cubic(const EulerianSnapshot& snap,
                                std::span<const double> x_targets) {
  const Spline iv(snap.x, snap.v);
  const Spline im(snap.x, snap.m);
  const Spline is(snap.x, snap.S);
  const Spline ixi(snap.x, snap.xi);
  EulerianSnapshot out;
  out.t = snap.t;
  const std::size_t nx = x_targets.size();
  out.xi.resize(nx);
  out.x.assign(x_targets.begin(), x_targets.end());
  out.v.resize(nx);
  out.m.resize(nx);
  out.n.resize(nx);
  out.S.resize(nx);
  for (std::size_t i = 0; i < nx; ++i) {
    const double xq = x_targets[i];
    out.xi[i] = ixi(xq);
    out.v[i] = iv(xq);
    out.m[i] = im(xq);
    out.n[i] = out.m[i] * gamma_factor(out.v[i]);
    out.S[i] = is(xq);
  }
  return out;
}

}  // namespace

EulerianSnapshot to_eulerian(const SimState& s, const Grid& grid,
                             const EntropyProfile& profile, double gamma) {
  return convert(s.t, s.u, s.w, grid, profile, gamma);
}

EulerianSnapshot to_eulerian(const Snapshot& snap, const Grid& grid,
                             const EntropyProfile& profile, double gamma) {
  return convert(snap.t, snap.u, snap.w, grid, profile, gamma);
}

EulerianSnapshot resample(const EulerianSnapshot& snap,
                          std::span<const double> x_targets) {
  if (snap.size() < 2) throw DomainError("resample needs >= 2 samples");
  const Pchip ixi(snap.x, snap.xi);
  const Pchip iv(snap.x, snap.v);
  const Pchip im(snap.x, snap.m);
  const Pchip is(snap.x, snap.S);
  EulerianSnapshot out;
  out.t = snap.t;
  const std::size_t nx = x_targets.size();
  out.xi.resize(nx);
  out.x.assign(x_targets.begin(), x_targets.end());
  out.v.resize(nx);
  out.m.resize(nx);
  out.n.resize(nx);
  out.S.resize(nx);
  for (std::size_t i = 0; i < nx; ++i) {
    const double xq = x_targets[i];
    out.xi[i] = ixi(xq);
    out.v[i] = iv(xq);
    out.m[i] = im(xq);
    // n is tied to m and v by definition; recomputing keeps the invariant
    // exact after interpolation.
    out.n[i] = out.m[i] * gamma_factor(out.v[i]);
    out.S[i] = is(xq);
  }
  return out;
}

std::vector<double> uniform_x_grid(const EulerianSnapshot& snap, int nx) {
  if (nx < 2) throw DomainError("uniform grid needs >= 2 points");
  if (snap.size() < 2) throw DomainError("snapshot has too few samples");
  const double lo = snap.x.front();
  const double hi = snap.x.back();
  std::vector<double> out(nx);
  for (int i = 0; i < nx; ++i)
    out[i] = lo + (hi - lo) * double(i) / double(nx - 1);
  return out;
}

std::vector<double> common_x_grid(const std::vector<EulerianSnapshot>& snaps,
                                  int nx, double margin_frac) {
  if (snaps.empty()) throw DomainError("no snapshots given");
  if (nx < 2) throw DomainError("uniform grid needs >= 2 points");
  double lo = snaps.front().x.front();
  double hi = snaps.front().x.back();
  for (const EulerianSnapshot& s : snaps) {
    lo = std::max(lo, s.x.front());
    hi = std::min(hi, s.x.back());
  }
  const double pad = (hi - lo) * margin_frac;
  lo += pad;
  hi -= pad;
  if (!(hi > lo)) throw DomainError("snapshots share no laboratory window");
  std::vector<double> out(nx);
  for (int i = 0; i < nx; ++i)
    out[i] = lo + (hi - lo) * double(i) / double(nx - 1);
  return out;
}

std::vector<EulerianLawDensity> eulerian_densities(const EulerianSnapshot& snap,
                                                   const EntropyProfile& profile,
                                                   double gamma) {
  std::vector<EulerianLawDensity> out;
  const std::size_t nx = snap.size();
  for (const ConservationLaw& law : builtin_laws(profile, gamma)) {
    EulerianLawDensity d;
    d.name = law.name;
    d.t_comp.resize(nx);
    d.x_comp.resize(nx);
    for (std::size_t i = 0; i < nx; ++i) {
      const double t = snap.t;
      const double x = snap.x[i];
      const double v = snap.v[i];
      const double m = snap.m[i];
      const double S = snap.S[i];
      const double gam = gamma_factor(v);
      const double G = lab_g(v, m, S, gamma);
      const double p = lab_pressure(v, m, S, gamma);
      const double energy = G / gam - S * std::pow(gam, gamma) * std::pow(m, gamma - 1.0);
      const double momentum = v * G / gam;
      switch (law.id) {
        case LawId::T1:
          d.t_comp[i] = momentum;
          d.x_comp[i] = p;
          break;
        case LawId::T2:
          d.t_comp[i] = energy;
          d.x_comp[i] = p * v;
          break;
        case LawId::T3:
          d.t_comp[i] = x * energy - t * momentum;
          d.x_comp[i] = p * (x * v - t);
          break;
        case LawId::T5:
          d.t_comp[i] = momentum / m;
          d.x_comp[i] = gam * G;
          break;
        case LawId::T4: {
          // The material coordinate enters explicitly; on the power family
          // it is recoverable from the entropy as xi = S^(1/q).
          const double q = 2.0 * (1.0 - gamma);
          const double xi = std::pow(S, 1.0 / q);
          d.t_comp[i] = t * (S * std::pow(gam, gamma) * std::pow(m, gamma - 1.0) -
                             G / gam) +
                        (x + xi / m) * momentum;
          d.x_comp[i] = xi * gam * G + p * (x - t * v);
          break;
        }
        case LawId::derived:
          break;
      }
    }
    out.push_back(std::move(d));
  }
  return out;
}

EulerianResiduals eulerian_residuals(const Trajectory& traj,
                                     const EntropyProfile& profile,
                                     double gamma, int nx, double margin_frac) {
  if (traj.snaps.size() < 3)
    throw InsufficientSnapshots("need >= 3 snapshots, got " +
                                std::to_string(traj.snaps.size()));
  if (nx < 8) throw DomainError("laboratory residuals need nx >= 8");
  const double dts = traj.snap_dt();
  if (!(dts > 0.0)) throw InsufficientSnapshots("snapshot spacing is not positive");

  std::vector<EulerianSnapshot> raw(traj.snaps.size());
  for (std::size_t k = 0; k < traj.snaps.size(); ++k)
    raw[k] = to_eulerian(traj.snaps[k], traj.grid, profile, gamma);
  const std::vector<double> xs = common_x_grid(raw, nx, margin_frac);
  std::vector<EulerianSnapshot> res(raw.size());
  par::for_index(std::int64_t(raw.size()),
                 [&](std::int64_t k) { res[k] = resample_cubic(raw[k], xs); });

  const std::size_t K = res.size();
  const double dx = xs[1] - xs[0];
  EulerianResiduals out;
  out.dt = dts;
  out.dx = dx;
  for (std::size_t k = 1; k + 1 < K; ++k) out.t.push_back(res[k].t);
  for (int i = 1; i + 1 < nx; ++i) out.x.push_back(xs[i]);
  const std::size_t rows = out.t.size();
  const std::size_t cols = out.x.size();
  out.continuity.resize(rows * cols);
  out.entropy.resize(rows * cols);
  out.momentum.resize(rows * cols);

  auto mom_density = [gamma](const EulerianSnapshot& s, int i) {
    return s.m[i] * s.v[i] * lab_g(s.v[i], s.m[i], s.S[i], gamma) /
           gamma_factor(s.v[i]);
  };
  auto mom_flux = [gamma, &mom_density](const EulerianSnapshot& s, int i) {
    return mom_density(s, i) * s.v[i] +
           lab_pressure(s.v[i], s.m[i], s.S[i], gamma);
  };

  par::for_index(std::int64_t(rows), [&](std::int64_t row) {
    const std::size_t k = row + 1;
    const EulerianSnapshot& sm = res[k - 1];
    const EulerianSnapshot& s0 = res[k];
    const EulerianSnapshot& sp = res[k + 1];
    for (std::size_t c = 0; c < cols; ++c) {
      const int i = int(c) + 1;
      const double cont = (sp.m[i] - sm.m[i]) / (2.0 * dts) +
                          (s0.m[i + 1] * s0.v[i + 1] - s0.m[i - 1] * s0.v[i - 1]) /
                              (2.0 * dx);
      const double ent = (sp.S[i] - sm.S[i]) / (2.0 * dts) +
                         s0.v[i] * (s0.S[i + 1] - s0.S[i - 1]) / (2.0 * dx);
      const double mom = (mom_density(sp, i) - mom_density(sm, i)) / (2.0 * dts) +
                         (mom_flux(s0, i + 1) - mom_flux(s0, i - 1)) / (2.0 * dx);
      out.continuity[row * cols + c] = cont;
      out.entropy[row * cols + c] = ent;
      out.momentum[row * cols + c] = mom;
    }
  });
  for (double r : out.continuity)
    out.max_continuity = std::max(out.max_continuity, std::abs(r));
  for (double r : out.entropy)
    out.max_entropy = std::max(out.max_entropy, std::abs(r));
  for (double r : out.momentum)
    out.max_momentum = std::max(out.max_momentum, std::abs(r));
  return out;
}

ConstraintResult constraint_residual(const EulerianSnapshot& snap,
                                     const EntropyProfile& profile,
                                     double gamma) {
  const std::size_t nx = snap.size();
  if (nx < 5) throw DomainError("constraint residual needs >= 5 samples");
  const double dx = snap.x[1] - snap.x[0];
  for (std::size_t i = 1; i < nx; ++i)
    if (std::abs((snap.x[i] - snap.x[i - 1]) - dx) > 1e-9 * std::max(1.0, std::abs(dx)))
      throw DomainError("constraint residual needs uniform laboratory samples");

  ClassifiedFamily fam;
  double q = 0.0;
  switch (profile.family()) {
    case EntropyProfile::Family::exponential:
      fam = ClassifiedFamily::exponential;
      q = profile.param();
      break;
    case EntropyProfile::Family::power:
      fam = ClassifiedFamily::power;
      q = profile.param();
      break;
    case EntropyProfile::Family::custom: {
      const ClassificationResult r = classify_entropy(profile, gamma);
      fam = r.family;
      q = r.q;
      break;
    }
    default:
      fam = ClassifiedFamily::constant;
  }
  if (fam != ClassifiedFamily::exponential && fam != ClassifiedFamily::power)
    throw NotApplicable("no local entropy-shape constraint for this family");

  ConstraintResult out;
  out.name = fam == ClassifiedFamily::exponential ? "exponential" : "power";
  for (std::size_t i = 1; i + 1 < nx; ++i) {
    const double sx = (snap.S[i + 1] - snap.S[i - 1]) / (2.0 * dx);
    double r;
    if (fam == ClassifiedFamily::exponential) {
      r = sx - q * snap.m[i] * snap.S[i];
    } else {
      const double sxx =
          (snap.S[i + 1] - 2.0 * snap.S[i] + snap.S[i - 1]) / (dx * dx);
      const double mx = (snap.m[i + 1] - snap.m[i - 1]) / (2.0 * dx);
      r = q * snap.m[i] * snap.S[i] * sxx + (1.0 - q) * snap.m[i] * sx * sx -
          q * mx * snap.S[i] * sx;
    }
    out.x.push_back(snap.x[i]);
    out.r.push_back(r);
    out.max_abs = std::max(out.max_abs, std::abs(r));
  }
  return out;
}

}  // namespace relgas
