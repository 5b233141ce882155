#pragma once

#include <ostream>

namespace cli {

/// Parses argv, dispatches the subcommand and returns an ExitCode.
int run_app(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cli
