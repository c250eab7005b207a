#pragma once

namespace evt::cli {

// Entry point for the evt command-line tool.  Returns the process exit
// code: 0 on success, 2 for unusable arguments or parameter specs, 3 when a
// computation's validity guard trips.
int run(int argc, char** argv);

}  // namespace evt::cli
