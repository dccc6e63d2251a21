#pragma once

#include <string>

#include "config.hpp"

namespace fadiff {

// Exit codes shared by the C API and the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitNumerical = 2;

// Build every operator from the config, run the full property suites, and
// write text/CSV reports into out_dir. Returns kExitOk iff all checks pass;
// a failing check is reported by name on the message stream.
int cmd_verify(const RunConfig& config, const std::string& out_dir,
               std::string* message);

// Manufactured-solution convergence study; writes the (n, dx, error, rate)
// CSV and a rate summary.
int cmd_converge(const RunConfig& config, const std::string& out_dir,
                 std::string* message);

// Time integration run: snapshot CSV, energy CSV, map target CSVs, config
// echo. Optionally emits the no-parallel companion run.
int cmd_run(const RunConfig& config, const std::string& out_dir,
            std::string* message);

}  // namespace fadiff
