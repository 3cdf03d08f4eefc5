// Benchmark of the OpenMP node kernels against the serial reference
// implementation, plus a bitwise agreement check on every compared output.
// Usage: bench_kernels [reps]   (default 20)
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "relgas/parallel.hpp"
#include "relgas/ref_solver.hpp"
#include "relgas/solver.hpp"

using namespace relgas;

namespace {

using Clock = std::chrono::steady_clock;

double secs(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration<double>(b - a).count();
}

SimState wave_state(const Grid& g) {
  SimState s;
  const int nn = g.num_nodes();
  s.u.resize(nn);
  s.w.resize(nn);
  for (int j = 0; j < nn; ++j) {
    const double xi = g.node(j);
    s.u[j] = 0.02 * std::sin(2.0 * M_PI * xi);
    s.w[j] = 0.1 * std::sin(4.0 * M_PI * xi);
  }
  return s;
}

bool bits_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() &&
         std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

int main(int argc, char** argv) {
  int reps = 20;
  if (argc > 1) {
    char* end = nullptr;
    reps = int(std::strtol(argv[1], &end, 10));
    if (end == argv[1] || *end != '\0' || reps < 1) {
      std::fprintf(stderr, "usage: bench_kernels [reps >= 1]\n");
      return 2;
    }
  }
  std::printf("threads: %d\n", par::max_threads());
  std::printf("%-10s %-10s %-12s %-12s %-9s %s\n", "kernel", "nodes",
              "parallel", "serial", "speedup", "bitwise");

  const EntropyProfile profile = EntropyProfile::constant(1.0);
  SolverConfig cfg;
  cfg.gamma = 5.0 / 3.0;

  bool all_match = true;
  for (int n : {4096, 16384, 65536}) {
    Grid g{0.0, 1.0, n, Boundary::periodic};
    const SimState s = wave_state(g);
    std::vector<double> du, dw, rdu, rdw;

    rhs(s, g, profile, cfg, du, dw);  // warm-up + allocation
    auto t0 = Clock::now();
    for (int r = 0; r < reps; ++r) rhs(s, g, profile, cfg, du, dw);
    auto t1 = Clock::now();
    for (int r = 0; r < reps; ++r) ref::rhs(s, g, profile, cfg, rdu, rdw);
    auto t2 = Clock::now();

    const bool match = bits_equal(du, rdu) && bits_equal(dw, rdw);
    all_match = all_match && match;
    const double tp = secs(t0, t1) / reps, ts = secs(t1, t2) / reps;
    std::printf("%-10s %-10d %-12s %-12s %-9.2f %s\n", "rhs", n,
                (std::to_string(tp * 1e6) + " us").c_str(),
                (std::to_string(ts * 1e6) + " us").c_str(), ts / tp,
                match ? "match" : "MISMATCH");
  }

  {
    // Short integration: production run() (persistent scratch, parallel)
    // against a serial reference loop with the same fixed step.
    const int n = 16384;
    Grid g{0.0, 1.0, n, Boundary::periodic};
    const SimState ic = wave_state(g);
    const int nsteps = std::max(1, reps);
    cfg.dt_override = 1e-5;
    cfg.t_end = nsteps * 1e-5;
    cfg.snapshot_stride = nsteps;

    auto t0 = Clock::now();
    const Trajectory traj = run(ic, g, profile, cfg);
    auto t1 = Clock::now();
    SimState sref = ic;
    sref.t = 0.0;
    for (int k = 0; k < nsteps; ++k)
      ref::step_rk4(sref, g, profile, cfg, 1e-5);
    auto t2 = Clock::now();

    if (traj.failed) {
      std::printf("integration failed: %s\n", traj.failure.c_str());
      return 1;
    }
    const bool match = bits_equal(traj.snaps.back().u, sref.u) &&
                       bits_equal(traj.snaps.back().w, sref.w);
    all_match = all_match && match;
    const double tp = secs(t0, t1), ts = secs(t1, t2);
    std::printf("%-10s %-10d %-12s %-12s %-9.2f %s\n", "rk4 loop", n,
                (std::to_string(tp * 1e3) + " ms").c_str(),
                (std::to_string(ts * 1e3) + " ms").c_str(), ts / tp,
                match ? "match" : "MISMATCH");
  }

  if (!all_match) {
    std::printf("serial and parallel kernels disagree\n");
    return 1;
  }
  return 0;
}
