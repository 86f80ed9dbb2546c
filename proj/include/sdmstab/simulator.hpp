#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace sdm {

// Behavioral model of the one-bit cascade of integrators with feedback.
// Each sample, with v the previous quantizer output:
//
//   s_1 <- s_1 + x[k] - g_1 v
//   s_j <- s_j + s_{j-1} - g_j v      (j = 2..n, upstream value before update)
//   v   <- sign(s_n),  sign(0) = +1
//
// Integrators are unbounded; a run is flagged divergent once any |s_j|
// exceeds the threshold.

struct DcInput {
  double level = 0.0;
};

struct SineInput {
  double amplitude = 0.0;
  double period = 64.0;  // samples per cycle
};

using InputSignal = std::variant<DcInput, SineInput>;

struct SimOptions {
  std::size_t samples = 100000;
  double threshold = 1e6;
  /// Integrator states before the first sample; empty means all zeros.
  std::vector<double> initial_state;
};

struct SimResult {
  bool diverged = false;
  std::optional<std::size_t> first_divergence_sample;
  double max_abs_state = 0.0;
  double mean_v = 0.0;
  std::size_t samples_run = 0;

  bool operator==(const SimResult&) const = default;
};

struct TraceRow {
  std::size_t k = 0;
  std::vector<double> s;
  int v = 1;
};

inline constexpr std::size_t kMaxTraceRows = 100000;

SimResult run(std::span<const double> g, const InputSignal& input, const SimOptions& opts);

/// Same run, also recording the first min(trace_rows, kMaxTraceRows) samples.
SimResult run_traced(std::span<const double> g, const InputSignal& input, const SimOptions& opts,
                     std::size_t trace_rows, std::vector<TraceRow>& trace);

/// Response of the output v to a unit impulse of quantizer error E = v - s_n
/// with x = 0 and the quantizer replaced by v = s_n + E.
std::vector<double> linearized_impulse(std::span<const double> g, int terms);

struct GridPoint {
  double amplitude = 0.0;
  bool stable = true;
  double max_abs_state = 0.0;
  std::optional<std::size_t> first_divergence_sample;

  bool operator==(const GridPoint&) const = default;
};

struct Window {
  double lo = 0.0;
  double hi = 0.0;

  bool operator==(const Window&) const = default;
};

struct WindowReport {
  std::vector<GridPoint> grid;
  std::vector<Window> windows;
};

struct SweepOptions {
  double amp_lo = 0.0;
  double amp_hi = 1.0;
  int steps = 64;
  std::size_t samples = 100000;
  double threshold = 1e6;
  /// 0 picks std::thread::hardware_concurrency().
  unsigned workers = 0;
};

/// Runs a DC input at each of `steps` evenly spaced amplitudes in
/// [amp_lo, amp_hi] from the all-zero state and collects the unstable runs.
WindowReport sweep(std::span<const double> g, const SweepOptions& opts);

/// Maximal runs of unstable grid points, as amplitude ranges.
std::vector<Window> extract_windows(std::span<const GridPoint> grid);

}  // namespace sdm
