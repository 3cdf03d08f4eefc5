#include "relgas/claws.hpp"

#include <cmath>

#include "relgas/symmetry.hpp"

namespace relgas {

namespace {

struct FamilyInfo {
  ClassifiedFamily family;
  double q;
};

// Tagged families resolve exactly; custom profiles are classified by
// sampling their domain.
FamilyInfo resolve_family(const EntropyProfile& p, double gamma) {
  switch (p.family()) {
    case EntropyProfile::Family::constant:
      return {ClassifiedFamily::constant, 0.0};
    case EntropyProfile::Family::exponential:
      return {ClassifiedFamily::exponential, p.param()};
    case EntropyProfile::Family::power:
      return {ClassifiedFamily::power, p.param()};
    case EntropyProfile::Family::custom: {
      const ClassificationResult r = classify_entropy(p, gamma);
      return {r.family, r.q};
    }
  }
  return {ClassifiedFamily::generic, 0.0};
}

bool always(const EntropyProfile&, double) { return true; }

bool constant_only(const EntropyProfile& p, double gamma) {
  return resolve_family(p, gamma).family == ClassifiedFamily::constant;
}

// Momentum density and flux.
double t1_t(const Jet1& j, double s0, double g) {
  return j.phi_t / gamma_factor(j.phi_t) * g_factor(j.phi_t, j.phi_xi, s0, g);
}
double t1_xi(const Jet1& j, double s0, double g) {
  const double gam = gamma_factor(j.phi_t);
  return std::pow(gam, g) * s0 * std::pow(j.phi_xi, -g);
}

// Energy.
double t2_t(const Jet1& j, double s0, double g) {
  const double gam = gamma_factor(j.phi_t);
  return g_factor(j.phi_t, j.phi_xi, s0, g) / gam -
         s0 * std::pow(gam, g) * std::pow(j.phi_xi, 1.0 - g);
}
double t2_xi(const Jet1& j, double s0, double g) {
  const double gam = gamma_factor(j.phi_t);
  return s0 * std::pow(gam, g) * j.phi_t * std::pow(j.phi_xi, -g);
}

// Boost: x * (energy) - t * (momentum).
double t3_t(const Jet1& j, double s0, double g) {
  return j.phi * t2_t(j, s0, g) - j.t * t1_t(j, s0, g);
}
double t3_xi(const Jet1& j, double s0, double g) {
  const double gam = gamma_factor(j.phi_t);
  return s0 * std::pow(gam, g) * (j.phi * j.phi_t - j.t) *
         std::pow(j.phi_xi, -g);
}

// xi-translation (constant entropy).
double t5_t(const Jet1& j, double s0, double g) {
  return j.phi_t * j.phi_xi / gamma_factor(j.phi_t) *
         g_factor(j.phi_t, j.phi_xi, s0, g);
}
double t5_xi(const Jet1& j, double s0, double g) {
  return gamma_factor(j.phi_t) * g_factor(j.phi_t, j.phi_xi, s0, g);
}

// Scaling law for the power family at the variational exponent.
double t4_t(const Jet1& j, double s0, double g) {
  const double gam = gamma_factor(j.phi_t);
  const double G = g_factor(j.phi_t, j.phi_xi, s0, g);
  return j.t * (s0 * std::pow(gam, g) * std::pow(j.phi_xi, 1.0 - g) - G / gam) +
         (j.phi + j.xi * j.phi_xi) * j.phi_t / gam * G;
}
double t4_xi(const Jet1& j, double s0, double g) {
  const double gam = gamma_factor(j.phi_t);
  const double G = g_factor(j.phi_t, j.phi_xi, s0, g);
  return j.xi * gam * G +
         s0 * std::pow(gam, g) * std::pow(j.phi_xi, -g) * (j.phi - j.t * j.phi_t);
}

ConservationLaw make_builtin(LawId id) {
  ConservationLaw law;
  law.id = id;
  switch (id) {
    case LawId::T1:
      law.name = "T1";
      law.applicable = always;
      law.density_t = t1_t;
      law.density_xi = t1_xi;
      break;
    case LawId::T2:
      law.name = "T2";
      law.applicable = always;
      law.density_t = t2_t;
      law.density_xi = t2_xi;
      break;
    case LawId::T3:
      law.name = "T3";
      law.time_dependent = true;
      law.applicable = always;
      law.density_t = t3_t;
      law.density_xi = t3_xi;
      law.note = "density stored as phi*(energy) - t*(momentum)";
      break;
    case LawId::T5:
      law.name = "T5";
      law.applicable = constant_only;
      law.density_t = t5_t;
      law.density_xi = t5_xi;
      break;
    case LawId::T4:
      law.name = "T4";
      law.time_dependent = true;
      // Fixed at construction time via builtin_laws; the default predicate
      // uses the canonical tolerance.
      law.applicable = [](const EntropyProfile& p, double gamma) {
        const FamilyInfo f = resolve_family(p, gamma);
        return f.family == ClassifiedFamily::power &&
               std::abs(f.q - 2.0 * (1.0 - gamma)) <= 1e-9;
      };
      law.density_t = t4_t;
      law.density_xi = t4_xi;
      break;
    case LawId::derived:
      throw DomainError("derived laws are built via noether_density");
  }
  return law;
}

}  // namespace

const ConservationLaw& builtin_law(LawId id) {
  static const ConservationLaw t1 = make_builtin(LawId::T1);
  static const ConservationLaw t2 = make_builtin(LawId::T2);
  static const ConservationLaw t3 = make_builtin(LawId::T3);
  static const ConservationLaw t5 = make_builtin(LawId::T5);
  static const ConservationLaw t4 = make_builtin(LawId::T4);
  switch (id) {
    case LawId::T1: return t1;
    case LawId::T2: return t2;
    case LawId::T3: return t3;
    case LawId::T5: return t5;
    case LawId::T4: return t4;
    case LawId::derived: break;
  }
  throw DomainError("no builtin law with the requested id");
}

std::vector<ConservationLaw> builtin_laws(const EntropyProfile& profile,
                                          double gamma, double q_tol) {
  if (!(gamma > 1.0)) throw DomainError("gamma must be > 1");
  std::vector<ConservationLaw> out;
  out.push_back(builtin_law(LawId::T1));
  out.push_back(builtin_law(LawId::T2));
  out.push_back(builtin_law(LawId::T3));
  const FamilyInfo f = resolve_family(profile, gamma);
  if (f.family == ClassifiedFamily::constant)
    out.push_back(builtin_law(LawId::T5));
  if (f.family == ClassifiedFamily::power &&
      std::abs(f.q - 2.0 * (1.0 - gamma)) <= q_tol)
    out.push_back(builtin_law(LawId::T4));
  return out;
}

DensityPair eval_density(const ConservationLaw& law, const Jet1& jet,
                         const EntropyProfile& profile, double gamma) {
  validate_jet(jet);
  if (law.applicable && !law.applicable(profile, gamma))
    throw NotApplicable("law " + law.name +
                        " does not apply to this profile/gamma");
  const double s0 = profile.s0(jet.xi);
  return {law.density_t(jet, s0, gamma), law.density_xi(jet, s0, gamma)};
}

}  // namespace relgas
