#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cadenoise::cli {

/// Runs the command line. Returns 0 on success, 1 on runtime errors and 2 on
/// usage errors (unknown flag or subcommand, missing argument).
int cli_main(int argc, char** argv);

/// Same as above with explicit arguments (argv[0] excluded) and streams.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cadenoise::cli
