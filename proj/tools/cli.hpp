// cli.hpp — command-line front end: subcommands, exit codes, artifact writing

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace friedrichs::cli {

// exit codes
constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

// args excludes the program name
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// worker threads: FRIEDRICHS_THREADS when set, capped by the hardware
unsigned thread_count();

}  // namespace friedrichs::cli
