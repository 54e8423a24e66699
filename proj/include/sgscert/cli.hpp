#pragma once

#include <ostream>

#include "sgscert/config.hpp"

namespace sgscert {

enum ExitCode : int {
    kExitExists = 0,  // also: sweep/scan/bloch completed
    kExitInput = 1,
    kExitInternal = 2,
    kExitInconclusive = 3,
};

// Each command writes its result to cfg.out (or `out` when empty) and
// diagnostics to `err`, and returns an ExitCode. Exceptions are mapped to
// exit codes here, so callers only see the code.
int cmd_check(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_scan(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_bloch(const RunConfig& cfg, std::ostream& out, std::ostream& err);

int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace sgscert
