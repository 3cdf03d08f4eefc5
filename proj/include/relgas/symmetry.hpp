#pragma once

#include <span>
#include <string>
#include <vector>

#include "relgas/claws.hpp"
#include "relgas/core.hpp"

// Point symmetries of the governing equation. Every admitted generator is
// affine in the dependent variables:
//   X = zeta_xi d/dxi + zeta_t d/dt + eta d/dphi
//   zeta_xi = a0 + a1 xi,  zeta_t = b0 + b1 t + b2 phi,  eta = c0 + c1 t + c2 phi
//
// Kernel (any entropy profile):
//   X1 = d/dphi, X2 = d/dt, X3 = phi d/dt + t d/dphi
// Extensions by profile family:
//   constant:            X4 = xi d/dxi + t d/dt + phi d/dphi, X5 = d/dxi
//   exponential e^(q xi): X4a = (gamma-1) d/dxi + q (t d/dt + phi d/dphi)
//   power xi^q:          X4b = (gamma-1) xi d/dxi + (gamma+q-1)(t d/dt + phi d/dphi)

namespace relgas {

struct AffineGenerator {
  std::string name;
  double a0 = 0, a1 = 0;          // zeta_xi
  double b0 = 0, b1 = 0, b2 = 0;  // zeta_t
  double c0 = 0, c1 = 0, c2 = 0;  // eta

  double zeta_xi(double xi) const { return a0 + a1 * xi; }
  double zeta_t(double t, double phi) const { return b0 + b1 * t + b2 * phi; }
  double eta_phi(double t, double phi) const { return c0 + c1 * t + c2 * phi; }
};

namespace gens {
AffineGenerator x1();
AffineGenerator x2();
AffineGenerator x3();
AffineGenerator x4();
AffineGenerator x5();
AffineGenerator x4a(double gamma, double q);
AffineGenerator x4b(double gamma, double q);
}  // namespace gens

std::vector<AffineGenerator> kernel_generators();

// First prolongation coefficients for (phi_t, phi_xi).
struct Prolongation {
  double eta_t;
  double eta_xi;
};

Prolongation prolong1(const AffineGenerator& g, const Jet1& j);

// Divergence-free test of the action density under the prolonged generator:
//   R = X(L) + L (D_t zeta_t + D_xi zeta_xi)
// Zero (for all jets) exactly when the generator is variational.
double noether_residual(const AffineGenerator& g, const Jet1& j,
                        const EntropyProfile& profile, double gamma);

// Cubic differential invariant of the entropy profile; identically zero on
// the exponential and power families:
//   Delta = -S0 S0' S0''' + 2 S0 S0''^2 - S0'' S0'^2
double delta_invariant(double s0, double s0p, double s0pp, double s0ppp);
double delta_invariant(const EntropyProfile& profile, double xi);
// Delta scaled by the sum of magnitudes of its three terms (0 when all
// terms vanish); |scaled| <= tol is the "identically zero" test.
double delta_invariant_scaled(const EntropyProfile& profile, double xi);

enum class ClassifiedFamily { constant, exponential, power, generic };
const char* family_name(ClassifiedFamily f);

struct ClassificationResult {
  ClassifiedFamily family = ClassifiedFamily::generic;
  double q = 0.0;  // fitted exponent for exponential/power
  std::vector<AffineGenerator> kernel;
  std::vector<AffineGenerator> extensions;
  std::vector<double> delta_samples;  // scaled Delta at the sample points
};

// Decides the family from samples of S0 and its derivatives. Order of tests:
// constant (S0' ~ 0), then Delta ~ 0 with an exponential fit (S0'/S0 const),
// then Delta ~ 0 with a power fit (xi S0'/S0 const), else generic. Ties break
// toward exponential. Requires >= 8 distinct sample points.
ClassificationResult classify_entropy(const EntropyProfile& profile,
                                      std::span<const double> samples,
                                      double gamma, double tol = 1e-8);
// Convenience overload sampling the profile domain uniformly.
ClassificationResult classify_entropy(const EntropyProfile& profile,
                                      double gamma, int num_samples = 17,
                                      double tol = 1e-8);

// Extension generators for an already-classified profile.
std::vector<AffineGenerator> extension_for(const EntropyProfile& profile,
                                           double gamma);

// Conserved density pair built from a generator:
//   T^t = zeta_t L + W dL/dphi_t,  T^xi = zeta_xi L + W dL/dphi_xi
// with characteristic W = eta - zeta_t phi_t - zeta_xi phi_xi. The pair
// closes (divergence-free on solutions) iff the generator is variational;
// non-variational generators get variational = false and a warning note.
// Orientation differs from the built-in catalogue per law: T1 = -N[X1],
// T2 = N[X2], T3 = N[X3], T5 = N[X5], T4 = N[X4b]/(gamma-1).
//
// The variational screen samples jets over the given profile (the flag can
// depend on it); the two-argument form screens on constant entropy.
ConservationLaw noether_density(const AffineGenerator& g, double gamma,
                                const EntropyProfile& profile);
ConservationLaw noether_density(const AffineGenerator& g, double gamma);

}  // namespace relgas
