// Command implementations behind the CLI front end.  Each returns a process
// exit code (0 ok, 1 invalid input, 2 runtime guard tripped, 3 verification
// failure) and writes its artifacts under cfg.out_dir:
//   simulate         snapshots.csv [+ diagnostics.csv, eulerian.csv] + summary.json
//   verify-el        summary.json
//   check-noether    summary.json
//   classify-entropy summary.json
//   diagnose         diagnostics.csv + summary.json
//   to-euler         eulerian.csv + summary.json
// Every summary carries the canonical config hash; artifacts contain no
// timestamps or environment data, so identical configs give identical bytes.
#pragma once

#include "relgas/config.hpp"

namespace relgas {

int cmd_simulate(const RunConfig& cfg);
int cmd_verify_el(const RunConfig& cfg);
int cmd_check_noether(const RunConfig& cfg);
int cmd_classify_entropy(const RunConfig& cfg);
int cmd_diagnose(const RunConfig& cfg);
int cmd_to_euler(const RunConfig& cfg);

}  // namespace relgas
