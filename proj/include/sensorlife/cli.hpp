#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sensorlife {

// args excludes the program name. Exit codes: 0 success, 1 config or
// validation error, 2 oracle disagreement.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int cli_main(int argc, char** argv);

}  // namespace sensorlife
