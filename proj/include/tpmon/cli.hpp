#ifndef TPMON_CLI_HPP
#define TPMON_CLI_HPP

namespace tpmon {

// Subcommands: simulate, steady, calibrate, allocate. Exit codes: 0 success,
// 1 usage/validation error, 2 numerical/calibration failure.
int cli_main(int argc, const char* const* argv);

} // namespace tpmon

#endif
