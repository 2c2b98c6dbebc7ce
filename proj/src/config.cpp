#include "lacspin/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "lacspin/runner.hpp"

namespace lacspin {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& text, double& out) {
  const std::string t = trim(text);
  if (t.empty()) return false;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc{} || ptr != last) return false;
  return std::isfinite(out);
}

bool parse_long(const std::string& text, long& out) {
  const std::string t = trim(text);
  if (t.empty()) return false;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

bool parse_bool(const std::string& text, bool& out) {
  const std::string t = lower(trim(text));
  if (t == "true" || t == "1" || t == "yes") {
    out = true;
    return true;
  }
  if (t == "false" || t == "0" || t == "no") {
    out = false;
    return true;
  }
  return false;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      parts.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(trim(cur));
  return parts;
}

struct RawEntry {
  std::string value;
  int line = 0;
};

const std::vector<std::string> kKnownKeys = {
    "mode",       "units",       "v_perturb",    "hfc",
    "omega1",     "r1",          "r2",           "pump",
    "fm",         "omega0",      "grid",         "grid_start",
    "grid_stop",  "grid_count",  "observables",  "phase_policy",
    "phase_deg",  "n_steps",     "output",       "emit_plot_data",
};

}  // namespace

std::string_view run_mode_name(RunMode m) {
  switch (m) {
    case RunMode::spectrum: return "spectrum";
    case RunMode::freqsweep: return "freqsweep";
    case RunMode::trajectory: return "trajectory";
  }
  return "unknown";
}

std::string_view unit_system_name(UnitSystem u) {
  return u == UnitSystem::cyclic ? "cyclic" : "angular";
}

std::string_view phase_policy_name(PhasePolicy p) {
  switch (p) {
    case PhasePolicy::raw_xy: return "raw_xy";
    case PhasePolicy::best_phase: return "best_phase";
    case PhasePolicy::fixed: return "fixed";
  }
  return "unknown";
}

double RunConfig::to_angular(double value) const {
  return units == UnitSystem::cyclic ? 2.0 * std::numbers::pi * value : value;
}

ModelParams RunConfig::base_params(double omega0_value, double fm_value) const {
  ModelParams p;
  p.omega0 = to_angular(omega0_value);
  p.v_perturb = to_angular(v_perturb);
  p.hfc = to_angular(hfc);
  p.omega1 = to_angular(omega1);
  p.r1 = to_angular(r1);
  p.r2 = to_angular(r2);
  p.pump = to_angular(pump);
  p.fm = fm_value;  // cyclic in both unit systems
  p.n_steps = n_steps.value_or(0);
  return p;
}

RunConfig parse_config(const std::string& text) {
  std::vector<std::string> issues;
  std::map<std::string, RawEntry> entries;

  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const size_t eq = stripped.find('=');
    if (eq == std::string::npos) {
      issues.push_back("line " + std::to_string(lineno) +
                       ": expected 'key = value'");
      continue;
    }
    const std::string key = lower(trim(stripped.substr(0, eq)));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty()) {
      issues.push_back("line " + std::to_string(lineno) + ": empty key");
      continue;
    }
    if (std::find(kKnownKeys.begin(), kKnownKeys.end(), key) == kKnownKeys.end()) {
      issues.push_back("line " + std::to_string(lineno) + ": unknown key '" +
                       key + "'");
      continue;
    }
    if (entries.count(key)) {
      issues.push_back("line " + std::to_string(lineno) + ": duplicate key '" +
                       key + "' (first set on line " +
                       std::to_string(entries[key].line) + ")");
      continue;
    }
    entries[key] = RawEntry{value, lineno};
  }

  RunConfig cfg;
  auto have = [&](const char* key) { return entries.count(key) != 0; };
  auto bad = [&](const char* key, const std::string& what) {
    issues.push_back("line " + std::to_string(entries[key].line) + ": key '" +
                     key + "': " + what);
  };

  // mode first; it decides which keys are required.
  if (have("mode")) {
    const std::string m = lower(entries["mode"].value);
    if (m == "spectrum") cfg.mode = RunMode::spectrum;
    else if (m == "freqsweep") cfg.mode = RunMode::freqsweep;
    else if (m == "trajectory") cfg.mode = RunMode::trajectory;
    else bad("mode", "must be spectrum, freqsweep or trajectory");
  } else {
    issues.push_back("missing required key 'mode'");
  }

  if (have("units")) {
    const std::string u = lower(entries["units"].value);
    if (u == "cyclic") cfg.units = UnitSystem::cyclic;
    else if (u == "angular") cfg.units = UnitSystem::angular;
    else bad("units", "must be cyclic or angular");
  } else {
    issues.push_back("missing required key 'units'");
  }

  auto need_double = [&](const char* key, double& slot) {
    if (!have(key)) {
      issues.push_back(std::string("missing required key '") + key + "'");
      return;
    }
    if (!parse_double(entries[key].value, slot))
      bad(key, "malformed number '" + entries[key].value + "'");
  };
  need_double("v_perturb", cfg.v_perturb);
  need_double("hfc", cfg.hfc);
  need_double("omega1", cfg.omega1);
  need_double("r1", cfg.r1);
  need_double("r2", cfg.r2);
  need_double("pump", cfg.pump);

  const bool need_fm =
      cfg.mode == RunMode::spectrum || cfg.mode == RunMode::trajectory;
  if (have("fm")) {
    double v;
    if (!parse_double(entries["fm"].value, v)) bad("fm", "malformed number");
    else if (v <= 0.0) bad("fm", "must be > 0");
    else cfg.fm = v;
    if (cfg.mode == RunMode::freqsweep)
      bad("fm", "not allowed in freqsweep mode (the grid carries fm values)");
  } else if (need_fm) {
    issues.push_back("missing required key 'fm'");
  }

  if (have("omega0")) {
    double v;
    if (!parse_double(entries["omega0"].value, v)) bad("omega0", "malformed number");
    else cfg.omega0 = v;
    if (cfg.mode != RunMode::trajectory)
      bad("omega0", "only allowed in trajectory mode (the grid sweeps omega0)");
  } else if (cfg.mode == RunMode::trajectory) {
    issues.push_back("missing required key 'omega0'");
  }

  // Grid: explicit list or (start, stop, count) triple, sweep modes only.
  const bool sweep_mode = cfg.mode != RunMode::trajectory;
  const bool has_list = have("grid");
  const bool has_triple =
      have("grid_start") || have("grid_stop") || have("grid_count");
  if (!sweep_mode) {
    if (has_list || has_triple)
      issues.push_back("grid keys are not allowed in trajectory mode");
  } else if (has_list && has_triple) {
    issues.push_back("specify either 'grid' or grid_start/grid_stop/grid_count, not both");
  } else if (has_list) {
    for (const std::string& part : split_list(entries["grid"].value)) {
      double v;
      if (!parse_double(part, v)) {
        bad("grid", "malformed number '" + part + "'");
        break;
      }
      cfg.grid.push_back(v);
    }
    if (cfg.grid.size() < 2) bad("grid", "needs at least 2 values");
    for (size_t i = 1; i < cfg.grid.size(); ++i)
      if (!(cfg.grid[i] > cfg.grid[i - 1])) {
        bad("grid", "values must be strictly increasing");
        break;
      }
  } else if (has_triple) {
    double start = 0.0, stop = 0.0;
    long count = 0;
    bool ok = true;
    auto need_part = [&](const char* key, auto parse, auto& slot) {
      if (!have(key)) {
        issues.push_back(std::string("missing required key '") + key + "'");
        ok = false;
      } else if (!parse(entries[key].value, slot)) {
        bad(key, "malformed value");
        ok = false;
      }
    };
    need_part("grid_start", parse_double, start);
    need_part("grid_stop", parse_double, stop);
    need_part("grid_count", parse_long, count);
    if (ok) {
      if (count < 2) bad("grid_count", "must be >= 2");
      else if (!(stop > start)) bad("grid_stop", "must exceed grid_start");
      else {
        cfg.grid.resize(static_cast<size_t>(count));
        for (long i = 0; i < count; ++i)
          cfg.grid[static_cast<size_t>(i)] =
              start + (stop - start) * (static_cast<double>(i) / (count - 1));
      }
    }
  } else {
    issues.push_back("missing grid: set 'grid' or grid_start/grid_stop/grid_count");
  }
  if (sweep_mode && cfg.mode == RunMode::freqsweep) {
    for (double v : cfg.grid)
      if (v <= 0.0) {
        issues.push_back("freqsweep grid values must all be > 0");
        break;
      }
  }

  if (have("observables")) {
    for (const std::string& part : split_list(entries["observables"].value)) {
      Observable o;
      if (!parse_observable(part, o)) {
        bad("observables", "unknown observable '" + part + "'");
        break;
      }
      if (std::find(cfg.observables.begin(), cfg.observables.end(), o) !=
          cfg.observables.end()) {
        bad("observables", "duplicate observable '" + part + "'");
        break;
      }
      cfg.observables.push_back(o);
    }
    if (cfg.observables.empty()) bad("observables", "needs at least one entry");
  } else {
    issues.push_back("missing required key 'observables'");
  }

  if (have("phase_policy")) {
    const std::string p = lower(entries["phase_policy"].value);
    if (p == "raw_xy") cfg.phase_policy = PhasePolicy::raw_xy;
    else if (p == "best_phase") cfg.phase_policy = PhasePolicy::best_phase;
    else if (p == "fixed") cfg.phase_policy = PhasePolicy::fixed;
    else bad("phase_policy", "must be raw_xy, best_phase or fixed");
  }
  if (have("phase_deg")) {
    double v;
    if (!parse_double(entries["phase_deg"].value, v)) bad("phase_deg", "malformed number");
    else cfg.phase_deg = v;
  }
  if (cfg.phase_policy == PhasePolicy::fixed && !cfg.phase_deg)
    issues.push_back("phase_policy = fixed requires 'phase_deg'");
  if (cfg.phase_policy != PhasePolicy::fixed && cfg.phase_deg)
    issues.push_back("'phase_deg' requires phase_policy = fixed");

  if (have("n_steps")) {
    const std::string v = lower(entries["n_steps"].value);
    if (v != "auto") {
      long n;
      if (!parse_long(v, n)) bad("n_steps", "must be a positive integer or 'auto'");
      else if (n < 2) bad("n_steps", "must be >= 2");
      else cfg.n_steps = n;
    }
  }

  if (have("output")) {
    cfg.output_path = entries["output"].value;
    if (cfg.output_path.empty()) bad("output", "must not be empty");
  } else {
    issues.push_back("missing required key 'output'");
  }

  if (have("emit_plot_data")) {
    bool v;
    if (!parse_bool(entries["emit_plot_data"].value, v))
      bad("emit_plot_data", "must be true or false");
    else cfg.emit_plot_data = v;
  }

  if (!issues.empty()) {
    std::ostringstream msg;
    msg << "configuration invalid (" << issues.size() << " issue"
        << (issues.size() == 1 ? "" : "s") << "):";
    for (const std::string& i : issues) msg << "\n  " << i;
    throw ParseError(msg.str(), issues);
  }
  return cfg;
}

std::string format_config(const RunConfig& config) {
  std::ostringstream out;
  out << "mode = " << run_mode_name(config.mode) << "\n";
  out << "units = " << unit_system_name(config.units) << "\n";
  out << "v_perturb = " << format_number(config.v_perturb) << "\n";
  out << "hfc = " << format_number(config.hfc) << "\n";
  out << "omega1 = " << format_number(config.omega1) << "\n";
  out << "r1 = " << format_number(config.r1) << "\n";
  out << "r2 = " << format_number(config.r2) << "\n";
  out << "pump = " << format_number(config.pump) << "\n";
  if (config.fm) out << "fm = " << format_number(*config.fm) << "\n";
  if (config.omega0) out << "omega0 = " << format_number(*config.omega0) << "\n";
  if (!config.grid.empty()) {
    out << "grid = ";
    for (size_t i = 0; i < config.grid.size(); ++i) {
      if (i) out << ", ";
      out << format_number(config.grid[i]);
    }
    out << "\n";
  }
  out << "observables = ";
  for (size_t i = 0; i < config.observables.size(); ++i) {
    if (i) out << ", ";
    out << observable_name(config.observables[i]);
  }
  out << "\n";
  out << "phase_policy = " << phase_policy_name(config.phase_policy) << "\n";
  if (config.phase_deg) out << "phase_deg = " << format_number(*config.phase_deg) << "\n";
  out << "n_steps = "
      << (config.n_steps ? std::to_string(*config.n_steps) : std::string("auto"))
      << "\n";
  out << "output = " << config.output_path << "\n";
  out << "emit_plot_data = " << (config.emit_plot_data ? "true" : "false") << "\n";
  return out.str();
}

}  // namespace lacspin
