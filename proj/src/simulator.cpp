#include "sdmstab/simulator.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>

#include "sdmstab/transfer.hpp"

namespace sdm {

namespace {

struct InputSource {
  const InputSignal& signal;

  double operator()(std::size_t k) const {
    if (const auto* dc = std::get_if<DcInput>(&signal)) return dc->level;
    const auto& sine = std::get<SineInput>(signal);
    return sine.amplitude * std::sin(2.0 * std::numbers::pi * static_cast<double>(k) / sine.period);
  }
};

inline int quantize(double v) { return v >= 0.0 ? 1 : -1; }

// One loop update with fully delayed integrators.
template <std::size_t N>
inline void integrate(std::array<double, N>& s, const std::array<double, N>& g, double x, double v) {
  for (std::size_t j = N - 1; j > 0; --j) s[j] += s[j - 1] - g[j] * v;
  s[0] += x - g[0] * v;
}

template <std::size_t N>
SimResult run_fixed(std::span<const double> g_in, const InputSignal& input, const SimOptions& opts,
                    std::size_t trace_rows, std::vector<TraceRow>* trace) {
  std::array<double, N> g{};
  std::array<double, N> s{};
  std::copy(g_in.begin(), g_in.end(), g.begin());
  if (!opts.initial_state.empty()) std::copy(opts.initial_state.begin(), opts.initial_state.end(), s.begin());

  const InputSource src{input};
  const bool dc = std::holds_alternative<DcInput>(input);
  const double dc_level = dc ? std::get<DcInput>(input).level : 0.0;

  SimResult res;
  int v = quantize(s[N - 1]);
  long long vsum = 0;
  for (std::size_t k = 0; k < opts.samples; ++k) {
    integrate(s, g, dc ? dc_level : src(k), static_cast<double>(v));
    v = quantize(s[N - 1]);
    vsum += v;
    ++res.samples_run;

    double peak = 0.0;
    for (double sj : s) peak = std::max(peak, std::abs(sj));
    res.max_abs_state = std::max(res.max_abs_state, peak);
    if (trace != nullptr && k < trace_rows) trace->push_back({k, std::vector<double>(s.begin(), s.end()), v});
    if (peak > opts.threshold || !std::isfinite(peak)) {
      res.diverged = true;
      res.first_divergence_sample = k;
      break;
    }
  }
  res.mean_v = res.samples_run > 0 ? static_cast<double>(vsum) / static_cast<double>(res.samples_run) : 0.0;
  return res;
}

SimResult dispatch(std::span<const double> g, const InputSignal& input, const SimOptions& opts,
                   std::size_t trace_rows, std::vector<TraceRow>* trace) {
  check_order(g.size());
  if (opts.samples < 1) throw std::invalid_argument("run: samples must be >= 1");
  if (!opts.initial_state.empty() && opts.initial_state.size() != g.size()) {
    throw std::invalid_argument("run: initial state must have one entry per integrator");
  }
  if (const auto* sine = std::get_if<SineInput>(&input); sine != nullptr && !(sine->period > 0.0)) {
    throw std::invalid_argument("run: sine period must be positive");
  }
  switch (g.size()) {
    case 1: return run_fixed<1>(g, input, opts, trace_rows, trace);
    case 2: return run_fixed<2>(g, input, opts, trace_rows, trace);
    case 3: return run_fixed<3>(g, input, opts, trace_rows, trace);
    case 4: return run_fixed<4>(g, input, opts, trace_rows, trace);
    default: return run_fixed<5>(g, input, opts, trace_rows, trace);
  }
}

}  // namespace

SimResult run(std::span<const double> g, const InputSignal& input, const SimOptions& opts) {
  return dispatch(g, input, opts, 0, nullptr);
}

SimResult run_traced(std::span<const double> g, const InputSignal& input, const SimOptions& opts,
                     std::size_t trace_rows, std::vector<TraceRow>& trace) {
  trace.clear();
  const std::size_t rows = std::min({trace_rows, kMaxTraceRows, opts.samples});
  trace.reserve(rows);
  return dispatch(g, input, opts, rows, &trace);
}

std::vector<double> linearized_impulse(std::span<const double> g, int terms) {
  check_order(g.size());
  if (terms < 0) throw std::invalid_argument("linearized_impulse: negative term count");
  const std::size_t n = g.size();
  std::vector<double> s(n, 0.0);
  std::vector<double> out(static_cast<std::size_t>(terms));
  for (int k = 0; k < terms; ++k) {
    const double e = k == 0 ? 1.0 : 0.0;
    const double v = s[n - 1] + e;
    out[k] = v;
    for (std::size_t j = n - 1; j > 0; --j) s[j] += s[j - 1] - g[j] * v;
    s[0] += -g[0] * v;
  }
  return out;
}

std::vector<Window> extract_windows(std::span<const GridPoint> grid) {
  std::vector<Window> out;
  bool open = false;
  for (const GridPoint& p : grid) {
    if (!p.stable) {
      if (!open) out.push_back({p.amplitude, p.amplitude});
      out.back().hi = p.amplitude;
      open = true;
    } else {
      open = false;
    }
  }
  return out;
}

WindowReport sweep(std::span<const double> g, const SweepOptions& opts) {
  check_order(g.size());
  if (!(opts.amp_lo < opts.amp_hi)) throw std::invalid_argument("sweep: need amp_lo < amp_hi");
  if (opts.steps < 2) throw std::invalid_argument("sweep: need at least 2 steps");

  const std::size_t steps = static_cast<std::size_t>(opts.steps);
  WindowReport rep;
  rep.grid.resize(steps);
  const std::vector<double> gains(g.begin(), g.end());
  SimOptions sim;
  sim.samples = opts.samples;
  sim.threshold = opts.threshold;

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < steps; i = next.fetch_add(1)) {
      const double amp = std::lerp(opts.amp_lo, opts.amp_hi, static_cast<double>(i) / static_cast<double>(steps - 1));
      const SimResult r = run(gains, DcInput{amp}, sim);
      rep.grid[i] = {amp, !r.diverged, r.max_abs_state, r.first_divergence_sample};
    }
  };

  unsigned workers = opts.workers != 0 ? opts.workers : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, steps));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  rep.windows = extract_windows(rep.grid);
  return rep;
}

}  // namespace sdm
