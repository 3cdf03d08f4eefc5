#include "relgas/symmetry.hpp"

#include <algorithm>
#include <cmath>

#include "relgas/rng.hpp"

namespace relgas {

namespace gens {

AffineGenerator x1() {
  AffineGenerator g;
  g.name = "X1";
  g.c0 = 1;
  return g;
}

AffineGenerator x2() {
  AffineGenerator g;
  g.name = "X2";
  g.b0 = 1;
  return g;
}

AffineGenerator x3() {
  AffineGenerator g;
  g.name = "X3";
  g.b2 = 1;
  g.c1 = 1;
  return g;
}

AffineGenerator x4() {
  AffineGenerator g;
  g.name = "X4";
  g.a1 = 1;
  g.b1 = 1;
  g.c2 = 1;
  return g;
}

AffineGenerator x5() {
  AffineGenerator g;
  g.name = "X5";
  g.a0 = 1;
  return g;
}

AffineGenerator x4a(double gamma, double q) {
  AffineGenerator g;
  g.name = "X4a";
  g.a0 = gamma - 1.0;
  g.b1 = q;
  g.c2 = q;
  return g;
}

AffineGenerator x4b(double gamma, double q) {
  AffineGenerator g;
  g.name = "X4b";
  g.a1 = gamma - 1.0;
  g.b1 = gamma + q - 1.0;
  g.c2 = gamma + q - 1.0;
  return g;
}

}  // namespace gens

std::vector<AffineGenerator> kernel_generators() {
  return {gens::x1(), gens::x2(), gens::x3()};
}

Prolongation prolong1(const AffineGenerator& g, const Jet1& j) {
  // Total derivatives of the affine coefficient functions along the jet:
  //   D_t f = f_t + phi_t f_phi,  D_xi f = f_xi + phi_xi f_phi.
  const double dt_eta = g.c1 + j.phi_t * g.c2;
  const double dxi_eta = j.phi_xi * g.c2;
  const double dt_zt = g.b1 + j.phi_t * g.b2;
  const double dxi_zt = j.phi_xi * g.b2;
  const double dt_zx = 0.0;  // zeta_xi depends on xi only
  const double dxi_zx = g.a1;
  Prolongation p{};
  p.eta_t = dt_eta - j.phi_t * dt_zt - j.phi_xi * dt_zx;
  p.eta_xi = dxi_eta - j.phi_t * dxi_zt - j.phi_xi * dxi_zx;
  return p;
}

double noether_residual(const AffineGenerator& g, const Jet1& j,
                        const EntropyProfile& profile, double gamma) {
  validate_jet(j);
  const double s0 = profile.s0(j.xi);
  const double s0p = profile.s0p(j.xi);
  const Prolongation p = prolong1(g, j);
  const double L = lagrangian_density(j.phi_t, j.phi_xi, s0, gamma);
  // X acts on L through the explicit xi dependence (via S0) and the
  // prolonged first derivatives; L has no explicit t or phi dependence.
  const double xl = g.zeta_xi(j.xi) * s0p * dlag_ds0(j.phi_t, j.phi_xi, s0, gamma) +
                    p.eta_t * dlag_dphi_t(j.phi_t, j.phi_xi, s0, gamma) +
                    p.eta_xi * dlag_dphi_xi(j.phi_t, j.phi_xi, s0, gamma);
  const double div = (g.b1 + g.b2 * j.phi_t) + g.a1;
  return xl + L * div;
}

double delta_invariant(double s0, double s0p, double s0pp, double s0ppp) {
  return -s0 * s0p * s0ppp + 2.0 * s0 * s0pp * s0pp - s0pp * s0p * s0p;
}

double delta_invariant(const EntropyProfile& profile, double xi) {
  return delta_invariant(profile.s0(xi), profile.s0p(xi), profile.s0pp(xi),
                         profile.s0ppp(xi));
}

double delta_invariant_scaled(const EntropyProfile& profile, double xi) {
  const double s0 = profile.s0(xi);
  const double s0p = profile.s0p(xi);
  const double s0pp = profile.s0pp(xi);
  const double s0ppp = profile.s0ppp(xi);
  const double scale = std::abs(s0 * s0p * s0ppp) +
                       2.0 * std::abs(s0 * s0pp * s0pp) +
                       std::abs(s0pp * s0p * s0p);
  if (scale == 0.0) return 0.0;
  return delta_invariant(s0, s0p, s0pp, s0ppp) / scale;
}

const char* family_name(ClassifiedFamily f) {
  switch (f) {
    case ClassifiedFamily::constant: return "constant";
    case ClassifiedFamily::exponential: return "exponential";
    case ClassifiedFamily::power: return "power";
    case ClassifiedFamily::generic: return "generic";
  }
  return "?";
}

namespace {

std::vector<AffineGenerator> extensions_for_family(ClassifiedFamily fam,
                                                   double q, double gamma) {
  switch (fam) {
    case ClassifiedFamily::constant: return {gens::x4(), gens::x5()};
    case ClassifiedFamily::exponential: return {gens::x4a(gamma, q)};
    case ClassifiedFamily::power: return {gens::x4b(gamma, q)};
    case ClassifiedFamily::generic: return {};
  }
  return {};
}

}  // namespace

ClassificationResult classify_entropy(const EntropyProfile& profile,
                                      std::span<const double> samples,
                                      double gamma, double tol) {
  if (samples.size() < 8)
    throw InsufficientSamples("classification needs >= 8 sample points, got " +
                              std::to_string(samples.size()));
  if (!(gamma > 1.0)) throw DomainError("gamma must be > 1");
  if (!(tol >= 0.0)) throw DomainError("classification tolerance must be >= 0");
  for (std::size_t i = 1; i < samples.size(); ++i)
    if (samples[i] == samples[i - 1])
      throw DomainError("classification samples must be distinct");

  ClassificationResult res;
  res.kernel = kernel_generators();

  const std::size_t n = samples.size();
  std::vector<double> s0(n), s0p(n);
  res.delta_samples.resize(n);
  double max_rel_s0p = 0.0, max_abs_delta = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = samples[i];
    s0[i] = profile.s0(xi);
    s0p[i] = profile.s0p(xi);
    if (!(s0[i] > 0.0) && !(s0[i] == 0.0))
      throw DomainError("entropy profile negative at sample xi = " +
                        std::to_string(xi));
    res.delta_samples[i] = delta_invariant_scaled(profile, xi);
    if (s0[i] != 0.0)
      max_rel_s0p = std::max(max_rel_s0p, std::abs(s0p[i]) / std::abs(s0[i]));
    max_abs_delta = std::max(max_abs_delta, std::abs(res.delta_samples[i]));
  }

  // Constant: S0' vanishes everywhere (relative to S0).
  if (max_rel_s0p <= tol) {
    res.family = ClassifiedFamily::constant;
    res.q = 0.0;
    res.extensions = extensions_for_family(res.family, res.q, gamma);
    return res;
  }

  if (max_abs_delta <= std::max(tol, 1e-12)) {
    // Exponential: r = S0'/S0 constant across samples.
    double mean_r = 0.0, mean_p = 0.0;
    std::vector<double> r(n), pw(n);
    bool power_ok_domain = true;
    for (std::size_t i = 0; i < n; ++i) {
      r[i] = s0p[i] / s0[i];
      mean_r += r[i];
      pw[i] = samples[i] * s0p[i] / s0[i];
      mean_p += pw[i];
      if (!(samples[i] > 0.0)) power_ok_domain = false;
    }
    mean_r /= double(n);
    mean_p /= double(n);
    const double rscale = std::max(std::abs(mean_r), 1.0);
    const double pscale = std::max(std::abs(mean_p), 1.0);
    bool exp_fit = true, pow_fit = power_ok_domain;
    for (std::size_t i = 0; i < n; ++i) {
      if (std::abs(r[i] - mean_r) > tol * rscale) exp_fit = false;
      if (pow_fit && std::abs(pw[i] - mean_p) > tol * pscale) pow_fit = false;
    }
    if (exp_fit) {
      res.family = ClassifiedFamily::exponential;
      res.q = mean_r;
      res.extensions = extensions_for_family(res.family, res.q, gamma);
      return res;
    }
    if (pow_fit) {
      res.family = ClassifiedFamily::power;
      res.q = mean_p;
      res.extensions = extensions_for_family(res.family, res.q, gamma);
      return res;
    }
  }

  res.family = ClassifiedFamily::generic;
  res.q = 0.0;
  return res;
}

ClassificationResult classify_entropy(const EntropyProfile& profile,
                                      double gamma, int num_samples,
                                      double tol) {
  if (num_samples < 8)
    throw InsufficientSamples("classification needs >= 8 sample points");
  std::vector<double> xs(num_samples);
  const double lo = profile.lo(), hi = profile.hi();
  // Stay off the endpoints; power-family domains may start at 0.
  const double margin = 0.02 * (hi - lo);
  for (int i = 0; i < num_samples; ++i)
    xs[i] = lo + margin + (hi - lo - 2 * margin) * i / double(num_samples - 1);
  return classify_entropy(profile, xs, gamma, tol);
}

std::vector<AffineGenerator> extension_for(const EntropyProfile& profile,
                                           double gamma) {
  // Tagged families are exact; custom profiles go through sampling.
  switch (profile.family()) {
    case EntropyProfile::Family::constant:
      return extensions_for_family(ClassifiedFamily::constant, 0.0, gamma);
    case EntropyProfile::Family::exponential:
      return extensions_for_family(ClassifiedFamily::exponential,
                                   profile.param(), gamma);
    case EntropyProfile::Family::power:
      return extensions_for_family(ClassifiedFamily::power, profile.param(),
                                   gamma);
    case EntropyProfile::Family::custom: {
      const ClassificationResult r = classify_entropy(profile, gamma);
      return r.extensions;
    }
  }
  return {};
}

ConservationLaw noether_density(const AffineGenerator& g, double gamma,
                                const EntropyProfile& profile) {
  if (!(gamma > 1.0)) throw DomainError("gamma must be > 1");

  ConservationLaw law;
  law.name = "N[" + g.name + "]";
  law.id = LawId::derived;
  law.time_dependent = (g.b1 != 0.0 || g.b2 != 0.0 || g.c1 != 0.0 ||
                        g.a1 != 0.0 || g.b0 != 0.0);
  law.applicable = [](const EntropyProfile&, double) { return true; };
  law.density_t = [g](const Jet1& j, double s0, double gm) {
    const double L = lagrangian_density(j.phi_t, j.phi_xi, s0, gm);
    const double w = g.eta_phi(j.t, j.phi) - g.zeta_t(j.t, j.phi) * j.phi_t -
                     g.zeta_xi(j.xi) * j.phi_xi;
    return g.zeta_t(j.t, j.phi) * L + w * dlag_dphi_t(j.phi_t, j.phi_xi, s0, gm);
  };
  law.density_xi = [g](const Jet1& j, double s0, double gm) {
    const double L = lagrangian_density(j.phi_t, j.phi_xi, s0, gm);
    const double w = g.eta_phi(j.t, j.phi) - g.zeta_t(j.t, j.phi) * j.phi_t -
                     g.zeta_xi(j.xi) * j.phi_xi;
    return g.zeta_xi(j.xi) * L + w * dlag_dphi_xi(j.phi_t, j.phi_xi, s0, gm);
  };

  // Variational screen on the given profile. Whether a pair closes can
  // depend on the profile (X5 needs constant entropy, X4b the matched power
  // exponent), so the screen samples jets over the profile's own domain.
  Rng rng(0x5eedULL);
  const double lo = profile.lo(), hi = profile.hi();
  const double margin = 0.02 * (hi - lo);
  double worst = 0.0;
  for (int i = 0; i < 256; ++i) {
    Jet1 j;
    j.xi = rng.uniform(lo + margin, hi - margin);
    j.t = rng.uniform(0.0, 2.0);
    j.phi = rng.uniform(-2.0, 2.0);
    j.phi_t = rng.uniform(-0.9, 0.9);
    j.phi_xi = rng.uniform(0.2, 5.0);
    const double L =
        lagrangian_density(j.phi_t, j.phi_xi, profile.s0(j.xi), gamma);
    worst = std::max(worst, std::abs(noether_residual(g, j, profile, gamma)) /
                                std::max(1.0, std::abs(L)));
  }
  if (worst > 1e-8) {
    law.variational = false;
    law.note = "generator " + g.name +
               " is not variational on this profile (screen residual " +
               std::to_string(worst) + "); the pair does not close";
  }
  return law;
}

ConservationLaw noether_density(const AffineGenerator& g, double gamma) {
  return noether_density(g, gamma, EntropyProfile::constant(1.0));
}

}  // namespace relgas
