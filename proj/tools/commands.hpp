#pragma once

#include "run_config.hpp"

#include <ostream>

namespace cli {

/// Each command writes its CSV to cfg.out (or `out` when empty), diagnostics to `diag`,
/// and returns an ExitCode.
int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& diag);
int cmd_scan(const RunConfig& cfg, std::ostream& out, std::ostream& diag);
int cmd_correlation(const RunConfig& cfg, std::ostream& out, std::ostream& diag);
int cmd_compare(const RunConfig& cfg, std::ostream& out, std::ostream& diag);
int cmd_asymptotics(const RunConfig& cfg, std::ostream& out, std::ostream& diag);

/// Runs a command and maps exceptions to exit codes.
int run_guarded(int (*command)(const RunConfig&, std::ostream&, std::ostream&), const RunConfig& cfg,
                std::ostream& out, std::ostream& diag);

}  // namespace cli
