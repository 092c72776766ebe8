#pragma once

#include <iosfwd>

namespace smovqe {

// Subcommands: run, sweep, validate, gs. Returns the process exit code:
// 0 on success, 1 on a runtime failure, 2 on a usage error.
int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace smovqe
