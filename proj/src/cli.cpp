#include "sdmstab/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "sdmstab/boundary.hpp"
#include "sdmstab/simulator.hpp"
#include "sdmstab/transfer.hpp"
#include "sdmstab/winding.hpp"

#ifndef SDMSTAB_VERSION
#define SDMSTAB_VERSION "0.0.0"
#endif

namespace sdm::cli {

std::string_view to_string(Command c) {
  switch (c) {
    case Command::bounds: return "bounds";
    case Command::check: return "check";
    case Command::contour: return "contour";
    case Command::from_g: return "from-g";
    case Command::simulate: return "simulate";
    case Command::sweep: return "sweep";
  }
  return "unknown";
}

namespace {

constexpr long long kMaxContourSamples = 1000000;
constexpr long long kMaxRunSamples = 1000000000;
constexpr int kMaxSweepSteps = 100000;

std::string_view format_name(Format f) {
  switch (f) {
    case Format::text: return "text";
    case Format::json: return "json";
    case Format::csv: return "csv";
  }
  return "text";
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

double parse_real(std::string_view flag, std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw UsageError("--" + std::string(flag) + ": malformed number '" + std::string(text) + "'");
  }
  return v;
}

long long parse_integer(std::string_view flag, std::string_view text) {
  text = trim(text);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw UsageError("--" + std::string(flag) + ": malformed integer '" + std::string(text) + "'");
  }
  return v;
}

std::vector<double> parse_list(std::string_view flag, std::string_view text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    out.push_back(parse_real(flag, text.substr(start, comma == std::string_view::npos ? comma : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (out.size() < static_cast<std::size_t>(kMinOrder) || out.size() > static_cast<std::size_t>(kMaxOrder)) {
    throw UsageError("--" + std::string(flag) + ": order must be in [1, 5], got " + std::to_string(out.size()));
  }
  return out;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw UsageError(message);
}

struct SubcommandSpec {
  Command command;
  const char* name;
  const char* description;
  std::vector<std::pair<const char*, const char*>> options;
};

const std::vector<SubcommandSpec>& subcommands() {
  static const std::vector<SubcommandSpec> specs = {
      {Command::bounds, "bounds", "stability intervals in |I| for a design", {}},
      {Command::check, "check", "count roots inside |z|=1 at one |I| value",
       {{"--i-abs", "integrator magnitude |I| (default 1)"}}},
      {Command::contour, "contour", "sample the contour image W(e^{i phi}) as CSV",
       {{"--i-abs", "integrator magnitude |I| (default 1)"}, {"--samples", "number of angles (default 512)"}}},
      {Command::from_g, "from-g", "convert between feedback gains g and coefficients b", {}},
      {Command::simulate, "simulate", "run the nonlinear time-domain model",
       {{"--samples", "samples to run (default 100000)"},
        {"--dc", "DC input level (default 0)"},
        {"--sine-amp", "sinusoidal input amplitude"},
        {"--sine-period", "sinusoid period in samples (default 64)"},
        {"--threshold", "divergence threshold on |s_j| (default 1e6)"},
        {"--trace", "dump the first N samples as k,s1..sn,v (csv format)"}}},
      {Command::sweep, "sweep", "DC amplitude sweep and instability windows",
       {{"--amp-lo", "lowest amplitude (default 0)"},
        {"--amp-hi", "highest amplitude (default 1)"},
        {"--amp-steps", "grid points (default 64)"},
        {"--samples", "samples per point (default 100000)"},
        {"--threshold", "divergence threshold on |s_j| (default 1e6)"},
        {"--workers", "worker threads (default: hardware concurrency)"}}},
  };
  return specs;
}

void apply_option(RunConfig& cfg, const std::string& name, const std::string& value) {
  if (name == "b") cfg.b = parse_list(name, value);
  else if (name == "g") cfg.g = parse_list(name, value);
  else if (name == "format") {
    if (value == "text") cfg.format = Format::text;
    else if (value == "json") cfg.format = Format::json;
    else if (value == "csv") cfg.format = Format::csv;
    else throw UsageError("--format: expected text, json or csv, got '" + value + "'");
  } else if (name == "out") cfg.out = value;
  else if (name == "i-abs") cfg.i_abs = parse_real(name, value);
  else if (name == "samples") cfg.samples = parse_integer(name, value);
  else if (name == "dc") cfg.dc = parse_real(name, value);
  else if (name == "sine-amp") cfg.sine_amp = parse_real(name, value);
  else if (name == "sine-period") cfg.sine_period = parse_real(name, value);
  else if (name == "amp-lo") cfg.amp_lo = parse_real(name, value);
  else if (name == "amp-hi") cfg.amp_hi = parse_real(name, value);
  else if (name == "amp-steps") cfg.amp_steps = static_cast<int>(std::clamp<long long>(parse_integer(name, value), -1, kMaxSweepSteps + 1));
  else if (name == "threshold") cfg.threshold = parse_real(name, value);
  else if (name == "trace") cfg.trace = parse_integer(name, value);
  else if (name == "workers") cfg.workers = static_cast<int>(std::clamp<long long>(parse_integer(name, value), -1, 1025));
}

void validate(const RunConfig& cfg) {
  require(cfg.b.has_value() != cfg.g.has_value(), "exactly one of --b or --g is required");
  if (cfg.i_abs) require(*cfg.i_abs >= 0.0, "--i-abs must be >= 0");
  if (cfg.samples) {
    const long long cap = cfg.command == Command::contour ? kMaxContourSamples : kMaxRunSamples;
    require(*cfg.samples >= 1 && *cfg.samples <= cap, "--samples must be in [1, " + std::to_string(cap) + "]");
  }
  require(!(cfg.dc && cfg.sine_amp), "--dc and --sine-amp are mutually exclusive");
  if (cfg.sine_period) {
    require(cfg.sine_amp.has_value(), "--sine-period needs --sine-amp");
    require(*cfg.sine_period > 0.0, "--sine-period must be > 0");
  }
  if (cfg.threshold) require(*cfg.threshold > 0.0, "--threshold must be > 0");
  if (cfg.trace) {
    require(*cfg.trace >= 0 && *cfg.trace <= static_cast<long long>(kMaxTraceRows),
            "--trace must be in [0, " + std::to_string(kMaxTraceRows) + "]");
  }
  if (cfg.amp_steps) require(*cfg.amp_steps >= 2 && *cfg.amp_steps <= kMaxSweepSteps, "--amp-steps must be in [2, 100000]");
  if (cfg.workers) require(*cfg.workers >= 1 && *cfg.workers <= 1024, "--workers must be in [1, 1024]");
  if (cfg.command == Command::sweep) {
    require(cfg.amp_lo.value_or(0.0) < cfg.amp_hi.value_or(1.0), "--amp-lo must be below --amp-hi");
  }
}

}  // namespace

RunConfig parse(std::span<const std::string> args) {
  CLI::App app{"Stability analysis for cascaded one-bit sigma-delta modulators", "sdmstab"};
  app.require_subcommand(1, 1);
  std::vector<std::pair<CLI::App*, Command>> subs;
  for (const auto& spec : subcommands()) {
    CLI::App* sub = app.add_subcommand(spec.name, spec.description);
    sub->add_option("--b", "coefficients b_1..b_n of B(z) - C(z), comma separated");
    sub->add_option("--g", "feedback gains g_1..g_n, comma separated");
    sub->add_option("--format", "text, json or csv (default text)");
    sub->add_option("--out", "output path, '-' for stdout (default)");
    for (const auto& [flag, help] : spec.options) sub->add_option(flag, help);
    subs.emplace_back(sub, spec.command);
  }

  // CLI11 consumes arguments from the back.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream os_out, os_err;
    const int code = app.exit(e, os_out, os_err);
    if (code == 0) throw UsageError(os_out.str(), true);
    throw UsageError(os_err.str().empty() ? std::string(e.what()) : os_err.str());
  }

  RunConfig cfg;
  for (const auto& [sub, command] : subs) {
    if (!sub->parsed()) continue;
    cfg.command = command;
    for (const CLI::Option* opt : sub->get_options()) {
      if (opt->count() == 0 || opt->get_lnames().empty()) continue;
      const std::string& name = opt->get_lnames().front();
      if (name == "help") continue;
      if (opt->count() > 1) throw UsageError("--" + name + " given more than once");
      apply_option(cfg, name, opt->results().front());
    }
  }
  validate(cfg);
  return cfg;
}

namespace {

std::string join_list(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_double(v[i]);
  return s;
}

}  // namespace

std::vector<std::string> to_argv(const RunConfig& cfg) {
  std::vector<std::string> a{std::string(to_string(cfg.command))};
  auto real = [&](const char* flag, const std::optional<double>& v) {
    if (v) a.push_back(std::string(flag) + "=" + format_double(*v));
  };
  auto integer = [&](const char* flag, const auto& v) {
    if (v) a.push_back(std::string(flag) + "=" + std::to_string(*v));
  };
  if (cfg.b) a.push_back("--b=" + join_list(*cfg.b));
  if (cfg.g) a.push_back("--g=" + join_list(*cfg.g));
  real("--i-abs", cfg.i_abs);
  integer("--samples", cfg.samples);
  real("--dc", cfg.dc);
  real("--sine-amp", cfg.sine_amp);
  real("--sine-period", cfg.sine_period);
  real("--amp-lo", cfg.amp_lo);
  real("--amp-hi", cfg.amp_hi);
  integer("--amp-steps", cfg.amp_steps);
  real("--threshold", cfg.threshold);
  integer("--trace", cfg.trace);
  integer("--workers", cfg.workers);
  a.push_back("--format=" + std::string(format_name(cfg.format)));
  a.push_back("--out=" + cfg.out);
  return a;
}

namespace {

std::vector<std::string> row(std::initializer_list<std::string> cells) { return cells; }

std::string cell(double v) { return format_double(v); }
std::string cell(bool v) { return v ? "true" : "false"; }
std::string cell(std::optional<std::size_t> v) { return v ? std::to_string(*v) : ""; }

void execute_bounds(const std::vector<double>& b, Report& rep) {
  const StabilityReport sr = classify_intervals(b);
  rep.payload = to_json(sr);
  if (b.size() == 3 && b[0] + b[1] + b[2] != 0.0) {
    const ClosedFormBound cf = i_max_order3(b);
    rep.payload["closed_form_3"] = {{"a", number_or_null(cf.a)}, {"x", number_or_null(cf.x)}, {"valid", cf.valid}};
  }
  rep.csv_header = {"lo", "hi", "stable", "marginal", "witness_a", "witness_count"};
  for (const auto& iv : sr.intervals) {
    rep.csv_rows.push_back(row({cell(iv.lo), cell(iv.hi), cell(iv.stable), cell(iv.marginal), cell(iv.witness_a),
                                std::to_string(iv.witness_count)}));
  }
}

void execute_check(const std::vector<double>& b, double a, Report& rep) {
  const Poly f = char_poly(b, a);
  const RootCountResult r = count_inside_e1(f);
  const bool stable = !r.marginal && r.inside == f.degree() && f.degree() == static_cast<int>(b.size());
  rep.payload = to_json(r);
  rep.payload["i_abs"] = a;
  rep.payload["degree"] = f.degree();
  rep.payload["stable"] = stable;
  rep.payload["jury"] = std::string(to_string(jury_stable(f)));
  rep.csv_header = {"i_abs", "inside", "method", "marginal", "stable"};
  rep.csv_rows.push_back(
      row({cell(a), std::to_string(r.inside), std::string(to_string(r.method)), cell(r.marginal), cell(stable)}));
  if (r.marginal) rep.exit_code = kExitRefused;
}

void execute_contour(const std::vector<double>& b, double a, int samples, Report& rep) {
  const Poly f = char_poly(b, a);
  Json rows = Json::array();
  rep.csv_header = {"phi", "re_w", "im_w"};
  for (const ContourSample& s : contour(f, samples)) {
    rows.push_back({{"phi", s.phi}, {"re_w", s.re_w}, {"im_w", s.im_w}});
    rep.csv_rows.push_back(row({cell(s.phi), cell(s.re_w), cell(s.im_w)}));
  }
  rep.payload = {{"i_abs", a}, {"samples", rows}};
}

void execute_from_g(const SdmDesign& design, Report& rep) {
  const std::vector<double> h = ntf_series(design.b, 16);
  rep.payload = {{"order", design.order}, {"g", design.g}, {"b", design.b}, {"ntf_impulse", h}};
  rep.csv_header = {"k", "g", "b"};
  for (std::size_t k = 0; k < design.b.size(); ++k) {
    rep.csv_rows.push_back(row({std::to_string(k + 1), cell(design.g[k]), cell(design.b[k])}));
  }
}

void execute_simulate(const RunConfig& cfg, const SdmDesign& design, Report& rep) {
  SimOptions opts;
  opts.samples = static_cast<std::size_t>(cfg.samples.value_or(100000));
  opts.threshold = cfg.threshold.value_or(1e6);
  InputSignal input = DcInput{cfg.dc.value_or(0.0)};
  if (cfg.sine_amp) input = SineInput{*cfg.sine_amp, cfg.sine_period.value_or(64.0)};

  std::vector<TraceRow> trace;
  const std::size_t rows = static_cast<std::size_t>(cfg.trace.value_or(0));
  const SimResult r = rows > 0 ? run_traced(design.g, input, opts, rows, trace) : run(design.g, input, opts);
  rep.payload = to_json(r);

  if (rows > 0) {
    rep.csv_header = {"k"};
    for (int j = 1; j <= design.order; ++j) rep.csv_header.push_back("s" + std::to_string(j));
    rep.csv_header.push_back("v");
    for (const TraceRow& t : trace) {
      std::vector<std::string> line{std::to_string(t.k)};
      for (double s : t.s) line.push_back(cell(s));
      line.push_back(std::to_string(t.v));
      rep.csv_rows.push_back(std::move(line));
    }
  } else {
    rep.csv_header = {"diverged", "first_divergence_sample", "max_abs_state", "mean_v", "samples_run"};
    rep.csv_rows.push_back(row({cell(r.diverged), cell(r.first_divergence_sample), cell(r.max_abs_state),
                                cell(r.mean_v), std::to_string(r.samples_run)}));
  }
}

void execute_sweep(const RunConfig& cfg, const SdmDesign& design, Report& rep) {
  SweepOptions opts;
  opts.amp_lo = cfg.amp_lo.value_or(0.0);
  opts.amp_hi = cfg.amp_hi.value_or(1.0);
  opts.steps = cfg.amp_steps.value_or(64);
  opts.samples = static_cast<std::size_t>(cfg.samples.value_or(100000));
  opts.threshold = cfg.threshold.value_or(1e6);
  opts.workers = static_cast<unsigned>(cfg.workers.value_or(0));
  const WindowReport wr = sweep(design.g, opts);
  rep.payload = to_json(wr);
  rep.csv_header = {"amplitude", "stable", "max_abs_state", "first_divergence_sample"};
  for (const GridPoint& p : wr.grid) {
    rep.csv_rows.push_back(
        row({cell(p.amplitude), cell(p.stable), cell(p.max_abs_state), cell(p.first_divergence_sample)}));
  }
}

}  // namespace

Report execute(const RunConfig& cfg) {
  const SdmDesign design = cfg.b ? SdmDesign::from_b(*cfg.b) : SdmDesign::from_g(*cfg.g);
  Report rep;
  rep.command = std::string(to_string(cfg.command));
  rep.version = SDMSTAB_VERSION;
  rep.inputs = {{"order", design.order}, {"b", design.b}, {"g", design.g}};
  for (const std::string& arg : to_argv(cfg)) {
    // Echo the command-specific options as given.
    const auto eq = arg.find('=');
    if (arg.rfind("--", 0) != 0 || eq == std::string::npos) continue;
    const std::string key = arg.substr(2, eq - 2);
    if (key == "b" || key == "g" || key == "format" || key == "out") continue;
    rep.inputs[key] = arg.substr(eq + 1);
  }

  switch (cfg.command) {
    case Command::bounds: execute_bounds(design.b, rep); break;
    case Command::check: execute_check(design.b, cfg.i_abs.value_or(1.0), rep); break;
    case Command::contour:
      execute_contour(design.b, cfg.i_abs.value_or(1.0), static_cast<int>(cfg.samples.value_or(512)), rep);
      break;
    case Command::from_g: execute_from_g(design, rep); break;
    case Command::simulate: execute_simulate(cfg, design, rep); break;
    case Command::sweep: execute_sweep(cfg, design, rep); break;
  }
  return rep;
}

std::string render(const Report& report, Format format) {
  switch (format) {
    case Format::json: {
      Json doc = report.payload;
      doc["command"] = report.command;
      doc["version"] = report.version;
      doc["inputs"] = report.inputs;
      return dump_json(doc) + "\n";
    }
    case Format::csv: {
      std::string s;
      for (std::size_t i = 0; i < report.csv_header.size(); ++i) s += (i ? "," : "") + report.csv_header[i];
      s += '\n';
      for (const auto& r : report.csv_rows) {
        for (std::size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + r[i];
        s += '\n';
      }
      return s;
    }
    case Format::text:
    default: {
      std::string s = "command: " + report.command + "\nversion: " + report.version + "\n";
      s += dump_text(Json{{"inputs", report.inputs}});
      s += dump_text(report.payload);
      return s;
    }
  }
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = parse(args);
  } catch (const UsageError& e) {
    if (e.help()) {
      out << e.what();
      return kExitOk;
    }
    err << "usage error: " << e.what() << (std::string_view(e.what()).ends_with('\n') ? "" : "\n");
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  Report rep;
  try {
    rep = execute(cfg);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRefused;
  }

  const std::string text = render(rep, cfg.format);
  if (cfg.out == "-") {
    out << text;
  } else {
    std::ofstream file(cfg.out, std::ios::binary);
    if (!(file << text) || !file.flush()) {
      err << "error: cannot write output to '" << cfg.out << "'\n";
      return kExitUsage;
    }
  }
  return rep.exit_code;
}

}  // namespace sdm::cli
