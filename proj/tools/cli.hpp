#pragma once

// Command-line front end: argument parsing into a RunConfig and dispatch
// to the library, one JSON record per line on stdout.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "matring/gf.hpp"

namespace matring::cli {

enum class Format { Json, Csv, Text };

struct RunConfig {
  std::string subcommand;
  Field field;  // null when no field flags were given
  std::optional<int> q;
  std::optional<int> n;
  std::string connection = "gl";  // gl | sl | det:<alpha>
  std::optional<std::string> matrix;
  std::string mode = "units";  // decompose: units | sl
  std::optional<int> alpha;
  std::optional<std::string> x_path, y_path;
  std::optional<std::string> a_path, b_path, c_path, d_path;
  Format format = Format::Json;
  std::uint64_t seed = 0;
  std::string help_text;  // set for subcommand "help"
};

enum class UsageKind { UnknownFlag, MissingArgument, InvalidField, InvalidValue };

std::string_view to_string(UsageKind kind);

class UsageError : public std::runtime_error {
 public:
  UsageError(UsageKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  UsageKind kind() const { return kind_; }

 private:
  UsageKind kind_;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Throws UsageError. `--help` is reported through the returned config's
/// subcommand "help".
RunConfig parse_args(const std::vector<std::string>& args);

/// Runs a parsed config; returns the exit status.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + run with usage errors mapped to exit status 2.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace matring::cli
