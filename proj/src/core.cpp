#include "relgas/core.hpp"

#include <cmath>
#include <utility>

namespace relgas {

// ---------------------------------------------------------------------------
// Entropy profiles

EntropyProfile EntropyProfile::constant(double s0, double lo, double hi) {
  if (!(s0 >= 0.0))
    throw DomainError("constant entropy must be >= 0, got " + std::to_string(s0));
  EntropyProfile p;
  p.family_ = Family::constant;
  p.param_ = s0;
  p.lo_ = lo;
  p.hi_ = hi;
  return p;
}

EntropyProfile EntropyProfile::exponential(double q, double lo, double hi) {
  EntropyProfile p;
  p.family_ = Family::exponential;
  p.param_ = q;
  p.lo_ = lo;
  p.hi_ = hi;
  return p;
}

EntropyProfile EntropyProfile::power(double q, double lo, double hi) {
  if (!(lo > 0.0))
    throw DomainError("power entropy profile needs a domain with xi > 0");
  EntropyProfile p;
  p.family_ = Family::power;
  p.param_ = q;
  p.lo_ = lo;
  p.hi_ = hi;
  return p;
}

EntropyProfile EntropyProfile::custom(Fn s0, Fn s0p, Fn s0pp, Fn s0ppp,
                                      double lo, double hi, bool validate) {
  if (!s0 || !s0p || !s0pp || !s0ppp)
    throw DomainError("custom entropy profile requires all four evaluators");
  if (!(hi > lo)) throw DomainError("custom entropy profile domain is empty");
  EntropyProfile p;
  p.family_ = Family::custom;
  p.lo_ = lo;
  p.hi_ = hi;
  p.f_ = std::move(s0);
  p.fp_ = std::move(s0p);
  p.fpp_ = std::move(s0pp);
  p.fppp_ = std::move(s0ppp);
  if (validate) p.validate();
  return p;
}

void EntropyProfile::check_power_domain(double xi) const {
  if (!(xi > 0.0))
    throw DomainError("power entropy profile evaluated at xi = " +
                      std::to_string(xi) + " <= 0");
}

double EntropyProfile::s0(double xi) const {
  switch (family_) {
    case Family::constant: return param_;
    case Family::exponential: return std::exp(param_ * xi);
    case Family::power: check_power_domain(xi); return std::pow(xi, param_);
    case Family::custom: return f_(xi);
  }
  return 0.0;
}

double EntropyProfile::s0p(double xi) const {
  switch (family_) {
    case Family::constant: return 0.0;
    case Family::exponential: return param_ * std::exp(param_ * xi);
    case Family::power:
      check_power_domain(xi);
      return param_ * std::pow(xi, param_ - 1.0);
    case Family::custom: return fp_(xi);
  }
  return 0.0;
}

double EntropyProfile::s0pp(double xi) const {
  switch (family_) {
    case Family::constant: return 0.0;
    case Family::exponential: return param_ * param_ * std::exp(param_ * xi);
    case Family::power:
      check_power_domain(xi);
      return param_ * (param_ - 1.0) * std::pow(xi, param_ - 2.0);
    case Family::custom: return fpp_(xi);
  }
  return 0.0;
}

double EntropyProfile::s0ppp(double xi) const {
  switch (family_) {
    case Family::constant: return 0.0;
    case Family::exponential:
      return param_ * param_ * param_ * std::exp(param_ * xi);
    case Family::power:
      check_power_domain(xi);
      return param_ * (param_ - 1.0) * (param_ - 2.0) * std::pow(xi, param_ - 3.0);
    case Family::custom: return fppp_(xi);
  }
  return 0.0;
}

namespace {

// Fourth-order centered stencils used only to vet custom profiles. Step
// sizes balance truncation against rounding for each derivative order; all
// three stay accurate enough that a correct derivative of a smooth profile
// clears a 1e-6 relative gate with wide margin.
double fd1(const EntropyProfile::Fn& f, double x, double h) {
  return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h);
}
double fd2(const EntropyProfile::Fn& f, double x, double h) {
  return (-f(x - 2 * h) + 16 * f(x - h) - 30 * f(x) + 16 * f(x + h) -
          f(x + 2 * h)) /
         (12 * h * h);
}
double fd3(const EntropyProfile::Fn& f, double x, double h) {
  return (0.125 * f(x - 3 * h) - f(x - 2 * h) + 1.625 * f(x - h) -
          1.625 * f(x + h) + f(x + 2 * h) - 0.125 * f(x + 3 * h)) /
         (h * h * h);
}

}  // namespace

void EntropyProfile::validate(int samples, double rel_tol) const {
  if (samples < 3) throw InsufficientSamples("profile validation needs >= 3 points");
  const double span = hi_ - lo_;
  // Keep FD stencils inside the domain.
  const double margin = 0.05 * span;
  for (int i = 0; i < samples; ++i) {
    const double xi =
        lo_ + margin + (span - 2 * margin) * i / double(samples - 1);
    const double v = s0(xi);
    const bool dust = family_ == Family::constant && param_ == 0.0;
    if (!dust && !(v > 0.0))
      throw DomainError("entropy profile not positive at xi = " +
                        std::to_string(xi));
    if (family_ != Family::custom) continue;

    const double xscale = std::max(1.0, std::abs(xi));
    const double fscale = std::max(1.0, std::abs(v));
    const double d1 = fd1(f_, xi, 2e-3 * xscale);
    const double d2 = fd2(f_, xi, 2e-3 * xscale);
    const double d3 = fd3(f_, xi, 4e-3 * xscale);
    const double e1 = std::abs(d1 - fp_(xi));
    const double e2 = std::abs(d2 - fpp_(xi));
    const double e3 = std::abs(d3 - fppp_(xi));
    if (e1 > rel_tol * std::max(fscale, std::abs(d1)) ||
        e2 > rel_tol * std::max(fscale, std::abs(d2)) ||
        e3 > rel_tol * std::max(fscale * 10.0, std::abs(d3)))
      throw DomainError(
          "custom entropy derivatives disagree with finite differences near "
          "xi = " + std::to_string(xi));
  }
}

const char* family_name(EntropyProfile::Family f) {
  switch (f) {
    case EntropyProfile::Family::constant: return "constant";
    case EntropyProfile::Family::exponential: return "exponential";
    case EntropyProfile::Family::power: return "power";
    case EntropyProfile::Family::custom: return "custom";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Pointwise state algebra

void validate_jet(const Jet1& j) {
  if (!(std::abs(j.phi_t) < 1.0))
    throw SuperluminalState("|phi_t| = " + std::to_string(std::abs(j.phi_t)) +
                            " >= 1 at xi = " + std::to_string(j.xi));
  if (!(j.phi_xi > 0.0))
    throw NonPositiveStretch("phi_xi = " + std::to_string(j.phi_xi) +
                             " <= 0 at xi = " + std::to_string(j.xi));
}

double gamma_factor(double v) {
  if (!(std::abs(v) < 1.0))
    throw SuperluminalState("|v| = " + std::to_string(std::abs(v)) + " >= 1");
  // (1-v)(1+v) keeps precision as |v| -> 1.
  return std::sqrt((1.0 - v) * (1.0 + v));
}

double pressure(double n, double S, double gamma) {
  if (!(n > 0.0)) throw DomainError("pressure needs n > 0");
  if (!(S > 0.0)) throw DomainError("pressure needs S > 0");
  if (!(gamma > 1.0)) throw DomainError("pressure needs gamma > 1");
  return S * std::pow(n, gamma);
}

namespace {

void check_args(double phi_t, double phi_xi, double s0, double gamma) {
  if (!(gamma > 1.0)) throw DomainError("gamma must be > 1");
  if (!(s0 >= 0.0)) throw DomainError("S0 must be >= 0");
  if (!(std::abs(phi_t) < 1.0))
    throw SuperluminalState("|phi_t| = " + std::to_string(std::abs(phi_t)) +
                            " >= 1");
  if (!(phi_xi > 0.0))
    throw NonPositiveStretch("phi_xi = " + std::to_string(phi_xi) + " <= 0");
}

}  // namespace

double lagrangian_density(double phi_t, double phi_xi, double s0, double gamma) {
  check_args(phi_t, phi_xi, s0, gamma);
  const double gam = gamma_factor(phi_t);
  return gam + std::pow(gam, gamma) * s0 * std::pow(phi_xi, 1.0 - gamma) /
                   (gamma - 1.0);
}

double g_factor(double phi_t, double phi_xi, double s0, double gamma) {
  check_args(phi_t, phi_xi, s0, gamma);
  const double gam = gamma_factor(phi_t);
  return 1.0 + gamma * s0 * std::pow(phi_xi, 1.0 - gamma) *
                   std::pow(gam, gamma - 1.0) / (gamma - 1.0);
}

double dlag_dphi_t(double phi_t, double phi_xi, double s0, double gamma) {
  const double gam = gamma_factor(phi_t);
  return -phi_t / gam * g_factor(phi_t, phi_xi, s0, gamma);
}

double dlag_dphi_xi(double phi_t, double phi_xi, double s0, double gamma) {
  check_args(phi_t, phi_xi, s0, gamma);
  const double gam = gamma_factor(phi_t);
  return -s0 * std::pow(gam, gamma) * std::pow(phi_xi, -gamma);
}

double dlag_ds0(double phi_t, double phi_xi, double s0, double gamma) {
  check_args(phi_t, phi_xi, s0, gamma);
  const double gam = gamma_factor(phi_t);
  return std::pow(gam, gamma) * std::pow(phi_xi, 1.0 - gamma) / (gamma - 1.0);
}

QuasilinearCoeffs quasilinear_coeffs(double phi_t, double phi_xi, double s0,
                                     double gamma) {
  check_args(phi_t, phi_xi, s0, gamma);
  const double gam = gamma_factor(phi_t);
  const double gam2 = gam * gam;
  const double gam4 = gam2 * gam2;
  QuasilinearCoeffs c{};
  c.a_tt = (gamma / (gamma - 1.0) * (gam2 * (gamma - 1.0) - gamma + 2.0) * s0 +
            std::pow(gam, 1.0 - gamma) * std::pow(phi_xi, gamma - 1.0)) *
           phi_xi * phi_xi;
  c.b_txi = -2.0 * gamma * gam2 * s0 * phi_t * phi_xi;
  c.c_xixi = -gam4 * gamma * s0;
  c.d_s0p = gam4 * phi_xi;
  return c;
}

double el_residual(const Jet2& j, double s0, double s0p, double gamma) {
  const QuasilinearCoeffs c = quasilinear_coeffs(j.phi_t, j.phi_xi, s0, gamma);
  return c.a_tt * j.phi_tt + c.b_txi * j.phi_txi + c.c_xixi * j.phi_xixi +
         c.d_s0p * s0p;
}

double accel(double phi_t, double phi_xi, double phi_txi, double phi_xixi,
             double s0, double s0p, double gamma, double eps_den) {
  const QuasilinearCoeffs c = quasilinear_coeffs(phi_t, phi_xi, s0, gamma);
  if (!(std::abs(c.a_tt) > eps_den))
    throw DegenerateDenominator("leading coefficient " +
                                std::to_string(c.a_tt) + " within " +
                                std::to_string(eps_den) + " of zero");
  return -(c.b_txi * phi_txi + c.c_xixi * phi_xixi + c.d_s0p * s0p) / c.a_tt;
}

}  // namespace relgas
