#pragma once

namespace graphlift::cli {

/// Parse arguments, dispatch the subcommand, and map failures to the exit
/// contract: 0 ok, 1 usage, 2 data, 3 infeasible.
int run(int argc, char** argv);

}  // namespace graphlift::cli
