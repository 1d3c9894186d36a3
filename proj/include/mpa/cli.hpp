// Command-line driver: analytic, simulate, chsh, scan, protocol, verify.
//
// Kept as a library so tests can drive every subcommand in-process and
// compare outputs byte for byte.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mpa/core.hpp"

namespace mpa::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kNumeric = 2,
  kVerificationFailed = 3,
};

/// Bad flag value, unknown config key, malformed config line.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Effective run configuration. Defaults, then the --config file, then
/// explicit flags.
struct RunConfig {
  int ma = 2;
  int mb = 2;
  std::string scheme = "fixed";  // fixed | alternating
  int alt_n = 2;
  std::string schedule = "parity";  // parity | random
  std::uint64_t trials = 1'000'000;
  std::uint64_t seed = 1;
  double theta_a = 0.0;
  double theta_b = 0.0;
  int grid_points = 64;
  std::string mode = "analytic";  // analytic | mc
  std::string output;

  AttackScheme attack_scheme() const;

  /// One-line "key=value ..." echo of every field, for report headers.
  std::string echo() const;
};

/// Radians, or degrees with a `deg` suffix ("22.5deg").
double parse_angle(std::string_view text);

/// Apply one key=value pair. Throws UsageError on unknown keys or bad values.
void apply_setting(RunConfig& config, std::string_view key, std::string_view value);

/// Parse a key=value config stream (`#` starts a comment) on top of `config`.
void load_config(RunConfig& config, std::istream& in);

/// Run one command line (args exclude the program name). Returns an ExitCode.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mpa::cli
