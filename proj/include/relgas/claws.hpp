#pragma once

#include <functional>
#include <string>
#include <vector>

#include "relgas/core.hpp"

// Conservation laws in Lagrangian form: pairs (T^t, T^xi) with
// D_t T^t + D_xi T^xi = 0 on solutions.
//
// The built-in catalogue, written with Gamma = sqrt(1 - phi_t^2) and
// G = g_factor:
//   T1 (momentum)      ( phi_t G / Gamma,  Gamma^g S0 phi_xi^-g )
//   T2 (energy)        ( G / Gamma - S0 Gamma^g phi_xi^(1-g),
//                        S0 Gamma^g phi_t phi_xi^-g )
//   T3 (boost)         ( phi T2^t - t T1^t,
//                        S0 Gamma^g (phi phi_t - t) phi_xi^-g )
//   T5 (xi-translation, constant entropy only)
//                      ( phi_t phi_xi G / Gamma,  Gamma G )
//   T4 (scaling, power entropy with q = 2(1-g) only)
//                      ( t (S0 Gamma^g phi_xi^(1-g) - G/Gamma)
//                          + (phi + xi phi_xi) phi_t G / Gamma,
//                        xi Gamma G + S0 Gamma^g phi_xi^-g (phi - t phi_t) )
//
// T3^t is stored in the boost-charge form x*(energy) - t*(momentum); that is
// the only pair shape that actually satisfies the divergence identity (see
// the synthetic-field tests, which verify every pair against the identity
// Div T = R - W * E for arbitrary smooth fields).

namespace relgas {

enum class LawId { T1, T2, T3, T5, T4, derived };

struct ConservationLaw {
  std::string name;
  LawId id = LawId::derived;
  // Densities carry explicit t (and phi) for T3/T4; the others depend on the
  // first derivatives and S0 only.
  bool time_dependent = false;
  std::function<bool(const EntropyProfile&, double gamma)> applicable;
  std::function<double(const Jet1&, double s0, double gamma)> density_t;
  std::function<double(const Jet1&, double s0, double gamma)> density_xi;
  // For generator-derived laws: false when the generator failed the
  // variational test, in which case the pair does not close.
  bool variational = true;
  std::string note;
};

struct DensityPair {
  double t_comp;
  double xi_comp;
};

// The member of the catalogue with the given id, unconditionally.
const ConservationLaw& builtin_law(LawId id);

// Laws applicable to this profile/gamma, in catalogue order. T1-T3 always;
// T5 for constant entropy; T4 for power entropy with q = 2(1-gamma) (matched
// to tolerance q_tol).
std::vector<ConservationLaw> builtin_laws(const EntropyProfile& profile,
                                          double gamma, double q_tol = 1e-9);

// Evaluates both components at a jet; S0 is taken from the profile at jet.xi.
// Throws NotApplicable when the law does not apply to the profile.
DensityPair eval_density(const ConservationLaw& law, const Jet1& jet,
                         const EntropyProfile& profile, double gamma);

}  // namespace relgas
