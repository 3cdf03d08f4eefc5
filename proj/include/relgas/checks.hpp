// Structure checks on the continuous formulation, independent of any solver
// run.  Each check samples random admissible jets and reports worst-case
// figures so callers can apply their own gates.
//
// check_el_equivalence: the variational field equation, expanded, must be a
// scalar multiple of the quasilinear form.  The expansion coefficients are
// obtained here by finite differences of the *analytic first partials* of
// the density, so the comparison never reuses the closed-form coefficient
// expressions it is testing.  The predicted multiplier is
// Gamma^(g-4) * phi_xi^(-1-g).
//
// check_noether_pattern: the action-invariance residual must vanish for the
// universal generators on every profile, for xi-translation on constant
// entropy, and for the family extension exactly at the variational exponent
// q = 2(1-g); plain scaling and mismatched exponents must leave residuals
// of order one.
//
// check_classification / check_delta: the profile classifier and the
// shape invariant on canonical profiles.
//
// check_lab_g: the laboratory-variable pressure-correction factor must agree
// with the material one pointwise (same quantity, two parameterizations).
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "relgas/core.hpp"
#include "relgas/symmetry.hpp"

namespace relgas {

struct ElEquivalenceReport {
  int num_samples = 0;
  double max_parallel_dev = 0.0;   // worst ||a - (a.b^)b^|| / ||a||
  double max_multiplier_err = 0.0; // worst relative error of a.b^/||b|| vs prediction
  double max_cross_asym = 0.0;     // worst mixed-partial asymmetry (should be ~0)
};

ElEquivalenceReport check_el_equivalence(int num_samples = 1000,
                                         std::uint64_t seed = 0x51ab5ULL);

struct NoetherProbe {
  std::string generator;
  std::string profile;
  bool expect_zero = false;
  double max_rel = 0.0;   // worst residual relative to its cancellation scale
  double frac_large = 0.0;  // fraction of jets with rel residual >= floor
  bool pass = false;
};

struct NoetherPatternReport {
  double zero_tol = 0.0, nonzero_floor = 0.0;
  int num_jets = 0;
  std::vector<NoetherProbe> rows;
  bool all_pass = true;
};

NoetherPatternReport check_noether_pattern(double gamma,
                                           int num_jets = 10000,
                                           double zero_tol = 1e-10,
                                           double nonzero_floor = 1e-3,
                                           std::uint64_t seed = 0x0e7eULL);

struct ClassificationProbe {
  std::string profile;
  ClassifiedFamily expected, got;
  double q_expected = 0.0, q_got = 0.0;
  bool pass = false;
};

struct ClassificationReport {
  std::vector<ClassificationProbe> rows;
  bool all_pass = true;
};

// The four canonical shapes, each wrapped as an opaque profile so the
// classifier cannot shortcut through the family tag.
ClassificationReport check_classification(double gamma, double q_tol = 1e-8);

struct DeltaProbe {
  std::string profile;
  double max_scaled = 0.0;  // worst |scaled invariant| over samples
  double expect_raw = 0.0;  // raw value expected at the probe point (0 if none)
  double got_raw = 0.0;
  bool pass = false;
};

struct DeltaReport {
  std::vector<DeltaProbe> rows;
  bool all_pass = true;
};

DeltaReport check_delta(double zero_tol = 1e-14);

struct LabGReport {
  int num_samples = 0;
  double max_rel = 0.0;
};

LabGReport check_lab_g(int num_samples = 10000, std::uint64_t seed = 0x61abULL);

}  // namespace relgas
