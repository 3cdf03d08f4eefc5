// Plain serial reference implementations of the solver kernels: straight
// loops, no shared scratch, profile evaluated on the fly.  They order the
// arithmetic exactly like the production kernels, so tests can require
// bit-for-bit agreement with the parallel path at any thread count, and the
// kernel benchmark can compare the two.
#pragma once

#include "relgas/solver.hpp"

namespace relgas::ref {

SpatialDerivs spatial_derivs(const SimState& s, const Grid& g);

void rhs(const SimState& s, const Grid& g, const EntropyProfile& profile,
         const SolverConfig& cfg, std::vector<double>& du,
         std::vector<double>& dw);

double max_char_speed(const SimState& s, const Grid& g,
                      const EntropyProfile& profile, const SolverConfig& cfg);

void step_rk4(SimState& s, const Grid& g, const EntropyProfile& profile,
              const SolverConfig& cfg, double dt);

}  // namespace relgas::ref
