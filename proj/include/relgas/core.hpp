#pragma once

#include <functional>
#include <string>

#include "relgas/errors.hpp"

// Pointwise algebra of 1D relativistic polytropic gas dynamics in
// mass-Lagrangian coordinates (xi, t), units with c = 1.
//
// The flow map is x = phi(xi, t). Jet variables:
//   v      = phi_t            fluid velocity, |v| < 1
//   w      = phi_xi           stretch, w > 0; baryon density m = 1/w
//   Gamma  = sqrt(1 - v^2)    reciprocal of the usual Lorentz factor
//   S0(xi)                    entropy label carried by each particle
// Closure: p = S n^gamma with gamma > 1.
//
// The governing second-order equation is quasilinear in
// (phi_tt, phi_txi, phi_xixi, S0') and coincides with the Euler-Lagrange
// equation of the action density
//   L = Gamma + Gamma^gamma S0 phi_xi^(1-gamma) / (gamma - 1).

namespace relgas {

struct GasParams {
  double gamma;
  explicit GasParams(double g) : gamma(g) {
    if (!(g > 1.0)) throw DomainError("gamma must be > 1, got " + std::to_string(g));
  }
};

// Entropy label S0(xi). The tagged families matter for the symmetry
// classification; custom profiles supply their own derivative evaluators.
class EntropyProfile {
public:
  enum class Family { constant, exponential, power, custom };

  using Fn = std::function<double(double)>;

  // S0 = s0 everywhere. s0 = 0 is accepted as the pressureless (dust) limit.
  static EntropyProfile constant(double s0, double lo = 0.0, double hi = 1.0);
  // S0 = exp(q xi).
  static EntropyProfile exponential(double q, double lo = 0.0, double hi = 1.0);
  // S0 = xi^q on xi > 0.
  static EntropyProfile power(double q, double lo = 0.5, double hi = 2.5);
  // Arbitrary smooth profile; the supplied derivatives are cross-checked
  // against finite differences of s0 on the domain at construction.
  static EntropyProfile custom(Fn s0, Fn s0p, Fn s0pp, Fn s0ppp,
                               double lo, double hi, bool validate = true);

  double s0(double xi) const;
  double s0p(double xi) const;    // d S0 / d xi
  double s0pp(double xi) const;   // second derivative
  double s0ppp(double xi) const;  // third derivative

  Family family() const { return family_; }
  // Family parameter: the constant value for `constant`, the exponent q for
  // `exponential` and `power`. Meaningless for custom profiles.
  double param() const { return param_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }

  // Positivity on sampled points of [lo, hi] (dust exempt for the constant
  // family) and, for custom profiles, derivative consistency.
  void validate(int samples = 33, double rel_tol = 1e-6) const;

private:
  EntropyProfile() = default;
  void check_power_domain(double xi) const;

  Family family_ = Family::constant;
  double param_ = 1.0;
  double lo_ = 0.0, hi_ = 1.0;
  Fn f_, fp_, fpp_, fppp_;
};

const char* family_name(EntropyProfile::Family f);

// First-order jet of the flow map at one point.
struct Jet1 {
  double xi = 0.0;
  double t = 0.0;
  double phi = 0.0;
  double phi_t = 0.0;   // v
  double phi_xi = 1.0;  // stretch
};

// Second-order extension.
struct Jet2 : Jet1 {
  double phi_tt = 0.0;
  double phi_txi = 0.0;
  double phi_xixi = 0.0;
};

// Throws SuperluminalState / NonPositiveStretch for inadmissible states.
void validate_jet(const Jet1& j);

// Gamma = sqrt(1 - v^2). Errors if |v| >= 1.
double gamma_factor(double v);

// p = S n^gamma. Requires n > 0, S > 0.
double pressure(double n, double S, double gamma);

// Action density L and its analytic first partials. These closed forms are
// the canonical implementation; finite differences of L appear only as an
// independent cross-check (see checks.hpp).
double lagrangian_density(double phi_t, double phi_xi, double s0, double gamma);
double dlag_dphi_t(double phi_t, double phi_xi, double s0, double gamma);
double dlag_dphi_xi(double phi_t, double phi_xi, double s0, double gamma);
double dlag_ds0(double phi_t, double phi_xi, double s0, double gamma);

// G = 1 + gamma S0 phi_xi^(1-gamma) Gamma^(gamma-1) / (gamma-1).
// Recurs throughout the conserved densities; dL/dphi_t = -phi_t G / Gamma.
double g_factor(double phi_t, double phi_xi, double s0, double gamma);

// The equation of motion written as
//   a_tt phi_tt + b_txi phi_txi + c_xixi phi_xixi + d_s0p S0' = 0.
struct QuasilinearCoeffs {
  double a_tt;
  double b_txi;
  double c_xixi;
  double d_s0p;
};

QuasilinearCoeffs quasilinear_coeffs(double phi_t, double phi_xi, double s0,
                                     double gamma);

// Left-hand side of the equation of motion at a full second-order jet.
// Zero exactly on solutions.
double el_residual(const Jet2& j, double s0, double s0p, double gamma);

// phi_tt solved from the equation of motion. Guards the leading coefficient:
// |a_tt| <= eps_den throws DegenerateDenominator.
double accel(double phi_t, double phi_xi, double phi_txi, double phi_xixi,
             double s0, double s0p, double gamma, double eps_den = 1e-12);

}  // namespace relgas
