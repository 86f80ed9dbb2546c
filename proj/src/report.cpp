#include "sdmstab/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace sdm {

Json number_or_null(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json to_json(const ZeroPointCandidate& c) {
  return {{"a", number_or_null(c.a)},
          {"x", number_or_null(c.x)},
          {"valid", c.valid},
          {"source", std::string(to_string(c.source))}};
}

Json to_json(const StabilityReport& r) {
  Json cands = Json::array();
  for (const auto& c : r.candidates) cands.push_back(to_json(c));
  Json ivs = Json::array();
  for (const auto& iv : r.intervals) {
    ivs.push_back({{"lo", number_or_null(iv.lo)},
                   {"hi", number_or_null(iv.hi)},
                   {"stable", iv.stable},
                   {"marginal", iv.marginal},
                   {"witness_a", number_or_null(iv.witness_a)},
                   {"witness_count", iv.witness_count}});
  }
  Json j = {{"sum_b", number_or_null(r.sum_b)},
            {"a_min", number_or_null(r.a_min)},
            {"candidates", cands},
            {"intervals", ivs},
            {"continuum", r.continuum}};
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

Json to_json(const CharacteristicPoints& p) {
  Json sx = Json::array();
  for (const auto& s : p.selfx) sx.push_back({{"x", number_or_null(s.x)}, {"re_w", number_or_null(s.re_w)}});
  return {{"w_plus", number_or_null(p.w_plus)}, {"w_minus", number_or_null(p.w_minus)}, {"selfx", sx}};
}

Json to_json(const RootCountResult& r) {
  Json j = {{"inside", r.inside},
            {"method", std::string(to_string(r.method))},
            {"marginal", r.marginal},
            {"e1_predicate", r.e1_predicate}};
  j["winding"] = r.winding ? Json(*r.winding) : Json(nullptr);
  if (r.points) j["points"] = to_json(*r.points);
  return j;
}

Json to_json(const SimResult& r) {
  Json j = {{"diverged", r.diverged},
            {"max_abs_state", number_or_null(r.max_abs_state)},
            {"mean_v", number_or_null(r.mean_v)},
            {"samples_run", r.samples_run}};
  j["first_divergence_sample"] = r.first_divergence_sample ? Json(*r.first_divergence_sample) : Json(nullptr);
  return j;
}

Json to_json(const WindowReport& r) {
  Json grid = Json::array();
  for (const auto& p : r.grid) {
    Json row = {{"amplitude", number_or_null(p.amplitude)},
                {"stable", p.stable},
                {"max_abs_state", number_or_null(p.max_abs_state)}};
    row["first_divergence_sample"] =
        p.first_divergence_sample ? Json(*p.first_divergence_sample) : Json(nullptr);
    grid.push_back(std::move(row));
  }
  Json windows = Json::array();
  for (const auto& w : r.windows) windows.push_back({{"lo", w.lo}, {"hi", w.hi}});
  return {{"grid", grid}, {"windows", windows}};
}

namespace {

void write_json(std::ostringstream& os, const Json& j, int indent, int depth) {
  const std::string pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
  const std::string close_pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
  const char* nl = indent > 0 ? "\n" : "";
  const char* sep = indent > 0 ? ": " : ":";
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << '{' << nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ',' << nl;
        first = false;
        os << pad << Json(it.key()).dump() << sep;
        write_json(os, it.value(), indent, depth + 1);
      }
      os << nl << close_pad << '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      os << '[' << nl;
      bool first = true;
      for (const auto& v : j) {
        if (!first) os << ',' << nl;
        first = false;
        os << pad;
        write_json(os, v, indent, depth + 1);
      }
      os << nl << close_pad << ']';
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        os << "null";
      } else {
        std::string s = format_double(v);
        // Keep floats recognizable as floats after a parse.
        if (s.find_first_of(".eE") == std::string::npos) s += ".0";
        os << s;
      }
      return;
    }
    default:
      os << j.dump();
  }
}

bool scalar_array(const Json& j) {
  for (const auto& v : j) {
    if (v.is_object() || v.is_array()) return false;
  }
  return true;
}

std::string scalar_text(const Json& v) {
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void write_text(std::ostringstream& os, const Json& j, const std::string& prefix) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      write_text(os, it.value(), prefix.empty() ? it.key() : prefix + "." + it.key());
    }
  } else if (j.is_array() && !scalar_array(j)) {
    for (std::size_t i = 0; i < j.size(); ++i) write_text(os, j[i], prefix + "[" + std::to_string(i) + "]");
  } else if (j.is_array()) {
    os << prefix << ": [";
    for (std::size_t i = 0; i < j.size(); ++i) os << (i ? ", " : "") << scalar_text(j[i]);
    os << "]\n";
  } else {
    os << prefix << ": " << scalar_text(j) << '\n';
  }
}

}  // namespace

std::string dump_json(const Json& j, int indent) {
  std::ostringstream os;
  write_json(os, j, indent, 0);
  return os.str();
}

std::string dump_text(const Json& j) {
  std::ostringstream os;
  write_text(os, j, "");
  return os.str();
}

}  // namespace sdm
