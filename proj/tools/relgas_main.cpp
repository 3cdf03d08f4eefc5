// CLI front end. Exit codes: 0 ok, 1 invalid input, 2 runtime guard tripped,
// 3 verification failure.
#include <cstdint>
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "relgas/commands.hpp"
#include "relgas/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{"1D relativistic polytropic gas dynamics in mass coordinates"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  int threads = 0;
  app.add_option("--config", config_path, "Config file (flat key = value)");
  auto* out_opt = app.add_option("--out", out_dir, "Output directory");
  auto* seed_opt = app.add_option("--seed", seed, "Random seed override");
  auto* thr_opt = app.add_option("--threads", threads, "Worker thread count");

  auto* sim = app.add_subcommand(
      "simulate", "Integrate and write snapshots.csv (+ optional extras)");
  auto* vel = app.add_subcommand(
      "verify-el", "Check the expanded variational equation against the "
                   "quasilinear form on random jets");
  auto* noe = app.add_subcommand(
      "check-noether", "Check the action-invariance verdict for the "
                       "generator/profile table");
  auto* cls = app.add_subcommand("classify-entropy",
                                 "Classify the configured entropy profile");
  auto* dia = app.add_subcommand(
      "diagnose", "Integrate and report conservation-law drift and residuals");
  auto* eul = app.add_subcommand(
      "to-euler", "Integrate and export laboratory-frame fields and residuals");
  for (CLI::App* s : {sim, vel, noe, cls, dia, eul}) s->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    relgas::RunConfig cfg;
    if (!config_path.empty()) cfg = relgas::load_config(config_path);
    if (out_opt->count() > 0) cfg.out_dir = out_dir;
    if (seed_opt->count() > 0) cfg.seed = seed;
    if (thr_opt->count() > 0) cfg.threads = threads;

    if (sim->parsed()) return relgas::cmd_simulate(cfg);
    if (vel->parsed()) return relgas::cmd_verify_el(cfg);
    if (noe->parsed()) return relgas::cmd_check_noether(cfg);
    if (cls->parsed()) return relgas::cmd_classify_entropy(cfg);
    if (dia->parsed()) return relgas::cmd_diagnose(cfg);
    if (eul->parsed()) return relgas::cmd_to_euler(cfg);
    std::fprintf(stderr, "error: no command selected\n");
    return 1;
  } catch (const relgas::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return e.kind() == relgas::ErrorKind::invalid_input ? 1 : 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
