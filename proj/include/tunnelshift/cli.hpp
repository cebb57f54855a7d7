#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tunnelshift {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

/// Subcommands: validate, shift, sweep, hydrogen, oracle. Returns the exit
/// code; diagnostics go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
/// Arguments without the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Appends `--key value` pairs from a JSON config for keys not already
/// present in `args`. Top-level scalars apply to every subcommand; an
/// object under the subcommand's name overrides them.
std::vector<std::string> merge_config(const std::vector<std::string>& args, const std::string& config_text);

/// Geometric grid from start to stop (inclusive), `count` points.
std::vector<double> geometric_grid(double start, double stop, int count);

}  // namespace tunnelshift
