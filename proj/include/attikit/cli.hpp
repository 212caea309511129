#pragma once

// Command-line front end. Kept as a library so tests can drive it in-process.

#include <iosfwd>
#include <string>
#include <vector>

namespace attikit::cli {

enum class AngleUnit { rad, deg };
enum class OutputFormat { json, csv };

struct CliConfig {
  AngleUnit angle_unit{AngleUnit::rad};
  OutputFormat output_format{OutputFormat::json};
  int precision{12};  ///< digits after the decimal point, in [4, 17]
  /// |norm - 1| accepted (then normalized) for quaternions and axes typed on
  /// the command line.
  double unit_tolerance{1e-6};
  /// Normalize any non-degenerate quaternion or axis instead of rejecting it.
  bool normalize{false};
};

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitParse = 2;
inline constexpr int kExitMath = 3;

/// Runs one invocation. `args` excludes the program name. Reads
/// ATTIKIT_PRECISION from the environment.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace attikit::cli
