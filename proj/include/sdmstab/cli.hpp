#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sdmstab/report.hpp"

namespace sdm::cli {

enum class Command { bounds, check, contour, from_g, simulate, sweep };
enum class Format { text, json, csv };

inline constexpr int kExitOk = 0;
inline constexpr int kExitRefused = 1;
inline constexpr int kExitUsage = 2;

/// Parsed command line. Options that were not given stay unset so the config
/// can be written back to an equivalent argument list.
struct RunConfig {
  Command command = Command::bounds;
  std::optional<std::vector<double>> b;
  std::optional<std::vector<double>> g;
  std::optional<double> i_abs;
  std::optional<long long> samples;
  std::optional<double> dc;
  std::optional<double> sine_amp;
  std::optional<double> sine_period;
  std::optional<double> amp_lo;
  std::optional<double> amp_hi;
  std::optional<int> amp_steps;
  std::optional<double> threshold;
  std::optional<long long> trace;
  std::optional<int> workers;
  Format format = Format::text;
  std::string out = "-";

  bool operator==(const RunConfig&) const = default;
};

/// Bad command line; maps to exit code 2. `help` marks a --help request.
class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& what, bool help = false) : std::runtime_error(what), help_(help) {}
  bool help() const noexcept { return help_; }

 private:
  bool help_;
};

/// Parses arguments after the program name. Throws UsageError.
RunConfig parse(std::span<const std::string> args);

/// Argument list that parses back to `cfg`.
std::vector<std::string> to_argv(const RunConfig& cfg);

struct Report {
  std::string command;
  std::string version;
  Json inputs;
  Json payload;
  std::vector<std::string> csv_header;
  std::vector<std::vector<std::string>> csv_rows;
  int exit_code = kExitOk;
};

/// Runs the analysis. Module errors propagate as exceptions.
Report execute(const RunConfig& cfg);

/// Deterministic rendering: text lines, JSON document, or the command's CSV table.
std::string render(const Report& report, Format format);

/// Whole pipeline with the exit-code contract: 0 success, 1 analysis refused
/// (marginal) or runtime failure, 2 usage or invalid input. Never throws.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

std::string_view to_string(Command c);

}  // namespace sdm::cli
