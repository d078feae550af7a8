#pragma once

namespace polysinc {

// Full command-line frontend; returns the process exit code.
// Exit 0: run terminated by threshold.  Exit 2: stagnation / iteration
// budget (solve) or at least one failed problem (bench).  Exit 1: bad
// flags, unknown problem, parse or solve failure.
int cli_main(int argc, char** argv);

}  // namespace polysinc
